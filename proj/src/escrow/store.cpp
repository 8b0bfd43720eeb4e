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

#include "sae/escrow/store.hpp"

#include <unistd.h>

#include <filesystem>

#include "sae/algebra/hash.hpp"
#include "sae/crypto/keystore.hpp"
#include "sae/errors.hpp"

namespace sae::escrow {

namespace {

Bytes frame_check(uint8_t type, ByteView payload) {
  ByteWriter w;
  w.u8(type).raw(payload);
  auto d = sha256(w.view());
  return Bytes(d.begin(), d.begin() + 4);
}

}  // namespace

RecordStore::RecordStore(std::string path) : path_(std::move(path)) {
  file_ = std::fopen(path_.c_str(), "ab");
  if (file_ == nullptr) throw Error(Errc::kIo, "cannot open store " + path_);
}

RecordStore::~RecordStore() {
  if (file_ != nullptr) std::fclose(file_);
}

std::vector<StoreRecord> RecordStore::load(const std::string& path) {
  std::vector<StoreRecord> out;
  if (!std::filesystem::exists(path)) return out;
  Bytes data = crypto::read_file(path);
  ByteReader r(data);
  while (!r.done()) {
    if (r.remaining() < 4) break;
    uint32_t len = r.u32();
    if (r.remaining() < size_t{len} + 5) break;  // torn tail
    StoreRecord rec;
    rec.type = r.u8();
    ByteView p = r.raw(len);
    rec.payload.assign(p.begin(), p.end());
    ByteView check = r.raw(4);
    Bytes expect = frame_check(rec.type, rec.payload);
    if (!std::equal(check.begin(), check.end(), expect.begin())) {
      throw Error(Errc::kDecode, "corrupt store record in " + path);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void RecordStore::append(uint8_t type, ByteView payload) {
  if (file_ == nullptr) return;
  ByteWriter w;
  w.u32(static_cast<uint32_t>(payload.size())).u8(type).raw(payload).raw(frame_check(type, payload));
  const Bytes& b = w.view();
  if (std::fwrite(b.data(), 1, b.size(), file_) != b.size() || std::fflush(file_) != 0) {
    throw Error(Errc::kIo, "store append failed: " + path_);
  }
  ::fsync(::fileno(file_));
}

}  // namespace sae::escrow
