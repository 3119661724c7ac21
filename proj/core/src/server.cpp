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

#include "ndvc/server.hpp"

#include <cerrno>
#include <cstring>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "ndvc/error.hpp"

namespace ndvc {

namespace {

constexpr int kPollMillis = 100;

std::string errno_text() { return std::strerror(errno); }

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  addrinfo* found = nullptr;
  if (::getaddrinfo(host.c_str(), nullptr, &hints, &found) != 0 || !found) {
    throw IoError("cannot resolve host '" + host + "'");
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(found->ai_addr)->sin_addr;
  ::freeaddrinfo(found);
  return addr;
}

// Waits until fd is readable or the flag is raised.
bool wait_readable(int fd, const std::atomic<bool>& stopping) {
  pollfd p{fd, POLLIN, 0};
  while (!stopping) {
    const int n = ::poll(&p, 1, kPollMillis);
    if (n > 0) return true;
    if (n < 0 && errno != EINTR) throw IoError("poll failed: " + errno_text());
  }
  return false;
}

Bytes error_frame(std::string_view code, const std::string& message) {
  const std::string body = encode_error_body({std::string(code), message});
  return frame_response(WireStatus::kError, ByteView(reinterpret_cast<const std::uint8_t*>(body.data()), body.size()));
}

}  // namespace

Server::Server(const Manifest& manifest, ServerOptions options) : manifest_(manifest), options_(std::move(options)) {
  load_storage(storage_, manifest_);
  for (Strategy s : kAllStrategies) {
    if (options_.strategy && *options_.strategy != s) continue;
    if (!manifest_.has_strategy(s)) {
      if (options_.strategy) throw NotFoundError("manifest has no artifacts for strategy " + std::string(to_string(s)));
      continue;
    }
    systems_.emplace(s, std::make_unique<SystemB>(manifest_, s, storage_));
  }
  report_.strategy = options_.strategy.value_or(Strategy::kSimulcast);

  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw IoError("socket failed: " + errno_text());
  const int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr = resolve(options_.host, options_.port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(listen_fd_, 16) != 0) {
    const std::string why = errno_text();
    ::close(listen_fd_);
    throw IoError("cannot listen on " + options_.host + ":" + std::to_string(options_.port) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

Server::~Server() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void Server::run() {
  std::vector<std::thread> connections;
  int next_id = 0;
  while (wait_readable(listen_fd_, stopping_)) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      throw IoError("accept failed: " + errno_text());
    }
    connections.emplace_back(&Server::serve_connection, this, fd, "conn-" + std::to_string(next_id++));
  }
  for (std::thread& t : connections) t.join();
}

void Server::serve_connection(int fd, std::string client) {
  try {
    std::uint8_t prefix[4];
    while (wait_readable(fd, stopping_)) {
      if (!read_exact(fd, prefix, 4)) break;
      const std::uint32_t size = get_u32_be(prefix);
      if (size > kMaxRequestPayload) {
        // The stream cannot be resynchronized past an oversized payload.
        write_all(fd, error_frame(wire_code::kBadRequest, "request payload exceeds " + std::to_string(kMaxRequestPayload) + " bytes"));
        break;
      }
      std::string payload(size, '\0');
      if (size && !read_exact(fd, reinterpret_cast<std::uint8_t*>(payload.data()), size)) break;
      write_all(fd, handle(payload, client));
    }
  } catch (const std::exception&) {
    // Peer went away mid-frame; nothing to answer.
  }
  ::close(fd);
}

Bytes Server::handle(std::string_view payload, const std::string& client) {
  try {
    const SegmentRequest req = decode_request_payload(payload);
    if (req.video != manifest_.info.video) {
      return error_frame(wire_code::kNoSuchVideo, "no video '" + req.video + "'");
    }
    const std::optional<Strategy> s = parse_strategy(req.strategy);
    const auto it = s ? systems_.find(*s) : systems_.end();
    if (it == systems_.end()) return error_frame(wire_code::kNoSuchStrategy, "strategy '" + req.strategy + "' is not served");
    const SystemB& b = *it->second;
    if (!b.has_point(req.qp)) return error_frame(wire_code::kNoSuchRep, "no representation at qp " + std::to_string(req.qp));
    if (req.segment < 0 || req.segment >= b.segment_count()) {
      return error_frame(wire_code::kNoSuchSegment, "no segment " + std::to_string(req.segment));
    }
    const Bytes body = b.produce_segment(req.qp, req.segment);
    {
      std::lock_guard lock(mu_);
      auto [slot, fresh] = client_slot_.emplace(client, report_.clients.size());
      if (fresh) report_.clients.push_back(ClientSession{client, 0, {}, 0});
      ClientSession& c = report_.clients[slot->second];
      c.interface_u_bytes += body.size();
      c.chosen_qps.push_back(req.qp);
      report_.interface_u_bytes += body.size();
      report_.deliveries.push_back({client, req.segment, req.qp, body.size(), false, fnv1a64(body), std::nullopt});
    }
    return frame_response(WireStatus::kOk, body);
  } catch (const ProtocolError& e) {
    return error_frame(e.wire_code(), e.what());
  } catch (const std::exception& e) {
    return error_frame(wire_code::kInternal, e.what());
  }
}

SessionReport Server::report() const {
  std::lock_guard lock(mu_);
  SessionReport r = report_;
  r.system_b_seconds = 0;
  for (const auto& [s, b] : systems_) r.system_b_seconds += b->busy_seconds();
  r.interface_t_read_bytes = storage_.read_bytes();
  return r;
}

// ---- client ----

Client::Client(const std::string& host, std::uint16_t port) {
  sockaddr_in addr = resolve(host, port);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw IoError("socket failed: " + errno_text());
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    const std::string why = errno_text();
    ::close(fd_);
    throw IoError("cannot connect to " + host + ":" + std::to_string(port) + ": " + why);
  }
}

Client::~Client() {
  if (fd_ >= 0) ::close(fd_);
}

Client::Response Client::request(const SegmentRequest& request) { return send_frame(frame_request(request)); }

Client::Response Client::send_frame(ByteView frame) {
  write_all(fd_, frame);
  std::uint8_t head[5];
  if (!read_exact(fd_, head, 5)) throw IoError("server closed the connection");
  if (head[0] > 1) throw CorruptionError("unknown response status " + std::to_string(head[0]));
  Response r;
  r.status = static_cast<WireStatus>(head[0]);
  r.body.resize(get_u32_be(head + 1));
  if (!r.body.empty() && !read_exact(fd_, r.body.data(), r.body.size())) throw IoError("server closed mid-response");
  return r;
}

}  // namespace ndvc
