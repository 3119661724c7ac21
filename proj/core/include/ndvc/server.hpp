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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ndvc/pipeline.hpp"
#include "ndvc/protocol.hpp"

namespace ndvc {

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks an ephemeral port
  // Serve only this strategy; otherwise every strategy the manifest holds.
  std::optional<Strategy> strategy;
};

// System B as a TCP service, one thread per connection.
class Server {
 public:
  // Loads Interface T and binds; throws IoError when the endpoint is unusable.
  Server(const Manifest& manifest, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const { return port_; }

  // Accepts connections until stop(); joins connection threads on return.
  void run();
  // Safe from any thread, including while run() is blocked.
  void stop() { stopping_ = true; }

  // Response frame for one request payload; never throws.
  Bytes handle(std::string_view payload, const std::string& client);

  SessionReport report() const;

 private:
  void serve_connection(int fd, std::string client);

  Manifest manifest_;
  ServerOptions options_;
  StorageT storage_;
  std::map<Strategy, std::unique_ptr<SystemB>> systems_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};

  mutable std::mutex mu_;
  SessionReport report_;
  std::map<std::string, std::size_t> client_slot_;
};

class Client {
 public:
  struct Response {
    WireStatus status = WireStatus::kOk;
    Bytes body;
  };

  Client(const std::string& host, std::uint16_t port);
  ~Client();
  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  Response request(const SegmentRequest& request);
  // Sends an arbitrary request frame; used to exercise malformed input.
  Response send_frame(ByteView frame);

 private:
  int fd_ = -1;
};

}  // namespace ndvc
