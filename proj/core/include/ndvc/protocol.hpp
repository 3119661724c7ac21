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

#include <cstdint>
#include <string>
#include <string_view>

#include "ndvc/container.hpp"
#include "ndvc/error.hpp"

namespace ndvc {

// Request frame: u32 big-endian payload length, then a UTF-8 JSON object
// {"video": str, "qp": int, "segment": int, "strategy": str}.
// Response frame: u8 status (0 ok, 1 error), u32 big-endian body length, body.
// Ok bodies are the raw segment bytes; error bodies are JSON {"code", "message"}.

inline constexpr std::uint32_t kMaxRequestPayload = 64 * 1024;

enum class WireStatus : std::uint8_t { kOk = 0, kError = 1 };

namespace wire_code {
inline constexpr std::string_view kNoSuchRep = "NO_SUCH_REP";
inline constexpr std::string_view kNoSuchSegment = "NO_SUCH_SEGMENT";
inline constexpr std::string_view kNoSuchVideo = "NO_SUCH_VIDEO";
inline constexpr std::string_view kNoSuchStrategy = "NO_SUCH_STRATEGY";
inline constexpr std::string_view kBadRequest = "BAD_REQUEST";
inline constexpr std::string_view kInternal = "INTERNAL";
}  // namespace wire_code

struct SegmentRequest {
  std::string video;
  int qp = 0;
  int segment = 0;
  std::string strategy;
  friend bool operator==(const SegmentRequest&, const SegmentRequest&) = default;
};

struct WireError {
  std::string code;
  std::string message;
};

// Failure to parse a request payload; wire_code() is the code to answer with.
class ProtocolError : public FormatError {
 public:
  ProtocolError(std::string_view wire_code, const std::string& message)
      : FormatError(message), wire_code_(wire_code) {}
  const std::string& wire_code() const { return wire_code_; }

 private:
  std::string wire_code_;
};

std::string encode_request_payload(const SegmentRequest& request);
// Throws ProtocolError(BAD_REQUEST) on malformed JSON or missing/mistyped fields.
SegmentRequest decode_request_payload(std::string_view payload);

Bytes frame_request(const SegmentRequest& request);
Bytes frame_response(WireStatus status, ByteView body);
std::string encode_error_body(const WireError& error);
WireError decode_error_body(ByteView body);

void put_u32_be(Bytes& out, std::uint32_t v);
std::uint32_t get_u32_be(const std::uint8_t* p);

// Blocking socket helpers. read_exact returns false on a clean EOF before the
// first byte and throws IoError on a short read or socket error.
bool read_exact(int fd, std::uint8_t* data, std::size_t size);
void write_all(int fd, ByteView bytes);

}  // namespace ndvc
