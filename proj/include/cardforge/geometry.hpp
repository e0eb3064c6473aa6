// Copyright 2026 The Cardforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <span>

namespace cardforge {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Cosine and sine of an angle in degrees; exact at multiples of 90.
struct CosSin {
  double cos;
  double sin;
};
CosSin cos_sin_deg(double degrees);

// Wraps into [0, 360).
double normalize_degrees(double degrees);

// Rectified card raster dimensions and corner rounding, in asset pixels.
struct CardGeometry {
  int width = 200;
  int height = 311;
  double corner_radius = 10.0;

  // W*H - (4 - pi) * r^2
  double analytic_area(double scale = 1.0) const {
    return scale * scale * (width * static_cast<double>(height) - (4.0 - M_PI) * corner_radius * corner_radius);
  }
  friend bool operator==(const CardGeometry&, const CardGeometry&) = default;
};

// Point-in-shape for an axis-aligned rounded rectangle centered on the
// origin. Straight edges are half-open ([-hw, hw) x [-hh, hh)) so abutting
// rectangles never share a pixel center.
inline bool rounded_rect_contains(double u, double v, double half_w, double half_h, double radius) {
  if (u < -half_w || u >= half_w || v < -half_h || v >= half_h) return false;
  const double qx = std::fabs(u) - (half_w - radius);
  const double qy = std::fabs(v) - (half_h - radius);
  if (qx <= 0.0 || qy <= 0.0) return true;
  return qx * qx + qy * qy <= radius * radius;
}

// Projective map stored row-major, applied as [x y 1] -> [x' y' w'].
class Homography {
 public:
  Homography() = default;
  explicit Homography(const std::array<double, 9>& m) : m_(m) {}

  // Solves for H with H(from[i]) = to[i]. Throws SingularHomography when
  // the correspondences do not determine an invertible map.
  static Homography from_correspondences(std::span<const Point2, 4> from, std::span<const Point2, 4> to);

  Point2 apply(Point2 p) const {
    const double w = m_[6] * p.x + m_[7] * p.y + m_[8];
    return {(m_[0] * p.x + m_[1] * p.y + m_[2]) / w, (m_[3] * p.x + m_[4] * p.y + m_[5]) / w};
  }

  const std::array<double, 9>& matrix() const { return m_; }
  double determinant() const;

 private:
  std::array<double, 9> m_{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

// Shoelace area (positive for either winding).
double polygon_area(std::span<const Point2> pts);

// True when all turns have the same nonzero sign.
bool is_strictly_convex(std::span<const Point2, 4> quad);

// True when some three of the four points are collinear (relative
// tolerance on the cross product).
bool has_collinear_triple(std::span<const Point2, 4> quad);

}  // namespace cardforge
