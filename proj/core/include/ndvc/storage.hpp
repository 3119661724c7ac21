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
#include <string>
#include <vector>

#include "ndvc/container.hpp"
#include "ndvc/evaluation.hpp"

namespace ndvc {

// The files kept at Interface T. Objects are immutable once stored, so
// concurrent readers only share the atomic read counter.
class StorageT {
 public:
  StorageT() = default;
  StorageT(const StorageT&) = delete;
  StorageT& operator=(const StorageT&) = delete;

  // Replaces any object with the same name.
  void put(const std::string& name, Bytes data);
  bool contains(const std::string& name) const;
  std::uint64_t size_of(const std::string& name) const;
  std::vector<std::string> names() const;

  // Accounted reads. NotFoundError for unknown names, InvalidArgument when
  // the range exceeds the object.
  Bytes read(const std::string& name, std::uint64_t offset, std::uint64_t length) const;
  Bytes read_all(const std::string& name) const;

  // Unaccounted access for building indexes at load time.
  ByteView peek(const std::string& name) const;

  std::uint64_t read_bytes() const { return read_bytes_.load(); }
  std::uint64_t stored_bytes() const { return stored_bytes_; }

 private:
  const Bytes& object(const std::string& name) const;

  std::map<std::string, Bytes> objects_;
  std::uint64_t stored_bytes_ = 0;
  mutable std::atomic<std::uint64_t> read_bytes_{0};
};

// Loads every stored artifact of the manifest (R_0, simulcast files, control
// streams), keyed by the record's path.
void load_storage(StorageT& storage, const Manifest& manifest);

}  // namespace ndvc
