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

#include <stdexcept>
#include <string>

namespace cardforge {

// Root of every error raised by the library. Subclasses name the failure
// kind so callers can map them to exit codes or test for them directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CARDFORGE_DEFINE_ERROR(Name)         \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

CARDFORGE_DEFINE_ERROR(InvalidClassCode);
CARDFORGE_DEFINE_ERROR(IoError);
CARDFORGE_DEFINE_ERROR(AnnotationParseError);
CARDFORGE_DEFINE_ERROR(DegenerateQuad);
CARDFORGE_DEFINE_ERROR(SingularHomography);
CARDFORGE_DEFINE_ERROR(EmptySequence);
CARDFORGE_DEFINE_ERROR(FrameSizeMismatch);
CARDFORGE_DEFINE_ERROR(NoValidPlacement);
CARDFORGE_DEFINE_ERROR(MissingAsset);
CARDFORGE_DEFINE_ERROR(CanvasTooSmall);
CARDFORGE_DEFINE_ERROR(InvalidFraction);
CARDFORGE_DEFINE_ERROR(MalformedLabel);
CARDFORGE_DEFINE_ERROR(MissingClassAssets);
CARDFORGE_DEFINE_ERROR(EmptyBackgrounds);
CARDFORGE_DEFINE_ERROR(ConfigError);

#undef CARDFORGE_DEFINE_ERROR

}  // namespace cardforge
