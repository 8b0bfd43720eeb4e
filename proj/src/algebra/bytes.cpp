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

#include "sae/algebra/bytes.hpp"

#include "sae/errors.hpp"

namespace sae {

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(Errc::kDecode, "invalid hex digit");
  };
  if (hex.size() % 2 != 0) throw Error(Errc::kDecode, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return out;
}

ByteWriter& ByteWriter::u8(uint8_t v) {
  out_.push_back(v);
  return *this;
}

ByteWriter& ByteWriter::u16(uint16_t v) {
  out_.push_back(static_cast<uint8_t>(v >> 8));
  out_.push_back(static_cast<uint8_t>(v));
  return *this;
}

ByteWriter& ByteWriter::u32(uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<uint8_t>(v >> shift));
  return *this;
}

ByteWriter& ByteWriter::u64(uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<uint8_t>(v >> shift));
  return *this;
}

ByteWriter& ByteWriter::bytes(ByteView v) {
  if (v.size() > UINT32_MAX) throw Error(Errc::kDecode, "field too long");
  u32(static_cast<uint32_t>(v.size()));
  return raw(v);
}

ByteWriter& ByteWriter::raw(ByteView v) {
  out_.insert(out_.end(), v.begin(), v.end());
  return *this;
}

ByteView ByteReader::raw(size_t n) {
  if (n > remaining()) throw Error(Errc::kDecode, "truncated input");
  ByteView out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

uint8_t ByteReader::u8() { return raw(1)[0]; }

uint16_t ByteReader::u16() {
  ByteView b = raw(2);
  return static_cast<uint16_t>((b[0] << 8) | b[1]);
}

uint32_t ByteReader::u32() {
  ByteView b = raw(4);
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) | (uint32_t{b[2]} << 8) | b[3];
}

uint64_t ByteReader::u64() {
  ByteView b = raw(8);
  uint64_t v = 0;
  for (uint8_t x : b) v = (v << 8) | x;
  return v;
}

Bytes ByteReader::bytes(size_t max_len) {
  uint32_t len = u32();
  if (len > max_len) throw Error(Errc::kDecode, "length prefix exceeds limit");
  ByteView b = raw(len);
  return Bytes(b.begin(), b.end());
}

std::string ByteReader::str(size_t max_len) {
  Bytes b = bytes(max_len);
  return std::string(b.begin(), b.end());
}

void ByteReader::expect_done() const {
  if (!done()) throw Error(Errc::kDecode, "trailing bytes");
}

}  // namespace sae
