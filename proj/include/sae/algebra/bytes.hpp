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

#ifndef SAE_ALGEBRA_BYTES_HPP_
#define SAE_ALGEBRA_BYTES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sae {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

// Big-endian, length-prefixed canonical encoder. All wire and persistence
// formats in the project are built from these primitives.
class ByteWriter {
 public:
  ByteWriter& u8(uint8_t v);
  ByteWriter& u16(uint16_t v);
  ByteWriter& u32(uint32_t v);
  ByteWriter& u64(uint64_t v);
  // u32 length followed by the bytes.
  ByteWriter& bytes(ByteView v);
  ByteWriter& str(std::string_view v) { return bytes(as_bytes(v)); }
  // No length prefix; for fixed-width fields.
  ByteWriter& raw(ByteView v);

  const Bytes& view() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  uint64_t u64();
  Bytes bytes(size_t max_len = 1u << 26);
  std::string str(size_t max_len = 1u << 20);
  ByteView raw(size_t n);

  bool done() const { return pos_ == in_.size(); }
  size_t remaining() const { return in_.size() - pos_; }
  // Throws kDecode if trailing bytes remain.
  void expect_done() const;

 private:
  ByteView in_;
  size_t pos_ = 0;
};

}  // namespace sae

#endif  // SAE_ALGEBRA_BYTES_HPP_
