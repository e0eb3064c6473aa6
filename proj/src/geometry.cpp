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

#include "cardforge/geometry.hpp"

#include <algorithm>
#include <utility>

#include "cardforge/error.hpp"

namespace cardforge {

CosSin cos_sin_deg(double degrees) {
  const double d = normalize_degrees(degrees);
  if (d == 0.0) return {1.0, 0.0};
  if (d == 90.0) return {0.0, 1.0};
  if (d == 180.0) return {-1.0, 0.0};
  if (d == 270.0) return {0.0, -1.0};
  const double rad = d * (M_PI / 180.0);
  return {std::cos(rad), std::sin(rad)};
}

double normalize_degrees(double degrees) {
  double d = std::fmod(degrees, 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

Homography Homography::from_correspondences(std::span<const Point2, 4> from, std::span<const Point2, 4> to) {
  if (has_collinear_triple(from) || has_collinear_triple(to)) {
    throw SingularHomography("homography corners contain a collinear triple");
  }
  // Unknowns h0..h7 with h8 = 1; two equations per correspondence.
  double a[8][9] = {};
  for (int i = 0; i < 4; ++i) {
    const double x = from[i].x, y = from[i].y, u = to[i].x, v = to[i].y;
    double* r0 = a[2 * i];
    double* r1 = a[2 * i + 1];
    r0[0] = x, r0[1] = y, r0[2] = 1, r0[6] = -u * x, r0[7] = -u * y, r0[8] = u;
    r1[3] = x, r1[4] = y, r1[5] = 1, r1[6] = -v * x, r1[7] = -v * y, r1[8] = v;
  }
  double scale = 0.0;
  for (auto& row : a)
    for (int c = 0; c < 8; ++c) scale = std::max(scale, std::fabs(row[c]));
  const double eps = 1e-12 * std::max(scale, 1.0);

  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < eps) throw SingularHomography("rank-deficient corner system");
    if (pivot != col) std::swap(a[pivot], a[col]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < 9; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 9> m{};
  for (int i = 0; i < 8; ++i) m[static_cast<std::size_t>(i)] = a[i][8] / a[i][i];
  m[8] = 1.0;
  Homography h(m);
  if (std::fabs(h.determinant()) < 1e-15) throw SingularHomography("degenerate homography");
  return h;
}

double Homography::determinant() const {
  const auto& m = m_;
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double polygon_area(std::span<const Point2> pts) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % pts.size()];
    sum += p.x * q.y - q.x * p.y;
  }
  return std::fabs(sum) / 2.0;
}

namespace {

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double extent(std::span<const Point2, 4> quad) {
  double e = 0.0;
  for (const auto& p : quad)
    for (const auto& q : quad) e = std::max(e, std::hypot(p.x - q.x, p.y - q.y));
  return e;
}

}  // namespace

bool is_strictly_convex(std::span<const Point2, 4> quad) {
  int sign = 0;
  for (int i = 0; i < 4; ++i) {
    const double c = cross(quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4]);
    const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) return false;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

bool has_collinear_triple(std::span<const Point2, 4> quad) {
  const double e = extent(quad);
  if (e == 0.0) return true;
  const double tol = 1e-9 * e * e;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (std::fabs(cross(quad[i], quad[j], quad[k])) <= tol) return true;
  return false;
}

}  // namespace cardforge
