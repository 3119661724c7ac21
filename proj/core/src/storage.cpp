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

#include "ndvc/storage.hpp"

#include "ndvc/error.hpp"

namespace ndvc {

void StorageT::put(const std::string& name, Bytes data) {
  auto it = objects_.find(name);
  if (it != objects_.end()) {
    stored_bytes_ -= it->second.size();
    it->second = std::move(data);
  } else {
    it = objects_.emplace(name, std::move(data)).first;
  }
  stored_bytes_ += it->second.size();
}

bool StorageT::contains(const std::string& name) const { return objects_.count(name) != 0; }

std::uint64_t StorageT::size_of(const std::string& name) const { return object(name).size(); }

std::vector<std::string> StorageT::names() const {
  std::vector<std::string> out;
  for (const auto& [name, bytes] : objects_) out.push_back(name);
  return out;
}

const Bytes& StorageT::object(const std::string& name) const {
  const auto it = objects_.find(name);
  if (it == objects_.end()) throw NotFoundError("no object '" + name + "' at Interface T");
  return it->second;
}

Bytes StorageT::read(const std::string& name, std::uint64_t offset, std::uint64_t length) const {
  const Bytes& obj = object(name);
  if (offset > obj.size() || length > obj.size() - offset) {
    throw InvalidArgument("read past the end of '" + name + "'");
  }
  read_bytes_ += length;
  return Bytes(obj.begin() + static_cast<std::ptrdiff_t>(offset),
               obj.begin() + static_cast<std::ptrdiff_t>(offset + length));
}

Bytes StorageT::read_all(const std::string& name) const { return read(name, 0, size_of(name)); }

ByteView StorageT::peek(const std::string& name) const { return object(name); }

void load_storage(StorageT& storage, const Manifest& manifest) {
  for (const ManifestRecord& r : manifest.records) {
    if (r.kind == "r0" || r.kind == "simulcast" || r.kind == "cs" || r.kind == "dcs") {
      Bytes bytes = read_file(manifest.resolve(r));
      if (bytes.size() != r.bytes) {
        throw CorruptionError("'" + r.path + "' is " + std::to_string(bytes.size()) + " bytes, manifest says " +
                              std::to_string(r.bytes));
      }
      storage.put(r.path, std::move(bytes));
    }
  }
}

}  // namespace ndvc
