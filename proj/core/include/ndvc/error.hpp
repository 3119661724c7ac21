// Copyright 2026 The NDVC Authors.
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
#include <string_view>

namespace ndvc {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kFormat,
  kUnsupportedFormat,
  kUnsupportedVersion,
  kTruncated,
  kCorrupt,
  kNotFound,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define NDVC_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  }

NDVC_DEFINE_ERROR(InvalidArgument, kInvalidArgument);
NDVC_DEFINE_ERROR(IoError, kIo);
NDVC_DEFINE_ERROR(FormatError, kFormat);
NDVC_DEFINE_ERROR(UnsupportedFormatError, kUnsupportedFormat);
NDVC_DEFINE_ERROR(UnsupportedVersionError, kUnsupportedVersion);
NDVC_DEFINE_ERROR(TruncationError, kTruncated);
NDVC_DEFINE_ERROR(CorruptionError, kCorrupt);
NDVC_DEFINE_ERROR(NotFoundError, kNotFound);

#undef NDVC_DEFINE_ERROR

}  // namespace ndvc
