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

#include "ndvc/protocol.hpp"

#include <cerrno>
#include <cstring>
#include <limits>

#include <sys/socket.h>
#include <unistd.h>

#include "json.hpp"

namespace ndvc {

using nlohmann::json;

void put_u32_be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32_be(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

std::string encode_request_payload(const SegmentRequest& r) {
  return json{{"video", r.video}, {"qp", r.qp}, {"segment", r.segment}, {"strategy", r.strategy}}.dump();
}

SegmentRequest decode_request_payload(std::string_view payload) {
  const json j = json::parse(payload, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ProtocolError(wire_code::kBadRequest, "request payload is not a JSON object");
  }
  const auto field = [&](const char* name) -> const json& {
    const auto it = j.find(name);
    if (it == j.end()) throw ProtocolError(wire_code::kBadRequest, std::string("request lacks field '") + name + "'");
    return *it;
  };
  const auto integer = [&](const char* name) {
    const json& v = field(name);
    if (!v.is_number_integer() || v.get<std::int64_t>() < std::numeric_limits<int>::min() ||
        v.get<std::int64_t>() > std::numeric_limits<int>::max()) {
      throw ProtocolError(wire_code::kBadRequest, std::string("field '") + name + "' must be an integer");
    }
    return static_cast<int>(v.get<std::int64_t>());
  };
  const auto text = [&](const char* name) {
    const json& v = field(name);
    if (!v.is_string()) throw ProtocolError(wire_code::kBadRequest, std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
  };
  SegmentRequest r;
  r.video = text("video");
  r.qp = integer("qp");
  r.segment = integer("segment");
  r.strategy = text("strategy");
  return r;
}

Bytes frame_request(const SegmentRequest& request) {
  const std::string payload = encode_request_payload(request);
  Bytes out;
  put_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Bytes frame_response(WireStatus status, ByteView body) {
  Bytes out{static_cast<std::uint8_t>(status)};
  put_u32_be(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::string encode_error_body(const WireError& e) { return json{{"code", e.code}, {"message", e.message}}.dump(); }

WireError decode_error_body(ByteView body) {
  const json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("code") || !j["code"].is_string()) {
    throw FormatError("malformed error body");
  }
  return {j["code"].get<std::string>(), j.value("message", std::string())};
}

bool read_exact(int fd, std::uint8_t* data, std::size_t size) {
  std::size_t done = 0;
  while (done < size) {
    const ssize_t n = ::recv(fd, data + done, size - done, 0);
    if (n == 0) {
      if (done == 0) return false;
      throw IoError("connection closed mid-frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("recv failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

void write_all(int fd, ByteView bytes) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + done, bytes.size() - done, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("send failed: ") + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace ndvc
