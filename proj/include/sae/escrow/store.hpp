// Copyright 2026 The SAE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAE_ESCROW_STORE_HPP_
#define SAE_ESCROW_STORE_HPP_

#include <cstdio>
#include <string>
#include <vector>

#include "sae/algebra/bytes.hpp"

namespace sae::escrow {

struct StoreRecord {
  uint8_t type = 0;
  Bytes payload;

  bool operator==(const StoreRecord&) const = default;
};

// Append-only file of checksummed frames: u32 length || u8 type || payload ||
// 4-byte SHA-256 prefix. A torn final frame is ignored on load; any other
// corruption throws kDecode.
class RecordStore {
 public:
  RecordStore() = default;  // in-memory only
  explicit RecordStore(std::string path);
  ~RecordStore();
  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  static std::vector<StoreRecord> load(const std::string& path);

  void append(uint8_t type, ByteView payload);
  const std::string& path() const { return path_; }
  bool persistent() const { return file_ != nullptr; }

 private:
  std::string path_;
  std::FILE* file_ = nullptr;
};

}  // namespace sae::escrow

#endif  // SAE_ESCROW_STORE_HPP_
