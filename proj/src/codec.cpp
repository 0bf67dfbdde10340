/* Copyright 2026 The rankfuzz Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "rankfuzz/codec.hpp"

#include <string>

namespace rankfuzz::codec {

Bytes element_bytes(const Felem& a) {
  const auto d = a.digits();
  return Bytes(d.begin(), d.end());
}

Bytes vector_bytes(std::span<const Felem> v) {
  Bytes out;
  for (const auto& a : v) {
    const auto d = a.digits();
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

namespace {

void put_u32_le(Bytes& out, std::uint64_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes matrix_bytes(const MatFq& mat) {
  Bytes out;
  out.reserve(8 + mat.entries().size());
  put_u32_le(out, mat.rows());
  put_u32_le(out, mat.cols());
  out.insert(out.end(), mat.entries().begin(), mat.entries().end());
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::ParseError, "odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0)
      throw Error(ErrorCode::ParseError, "invalid hex string '" + std::string(hex) + "'");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string element_hex(const Felem& a) { return to_hex(a.digits()); }

Felem element_from_hex(const ExtField& ctx, std::string_view hex) {
  const Bytes bytes = from_hex(hex);
  if (bytes.size() != ctx.m())
    throw Error(ErrorCode::ParseError, "element '" + std::string(hex) + "' has " +
                                           std::to_string(bytes.size()) + " bytes, expected " +
                                           std::to_string(ctx.m()));
  for (auto b : bytes)
    if (b >= ctx.q())
      throw Error(ErrorCode::ParseError,
                  "element '" + std::string(hex) + "' has a digit outside F_" +
                      std::to_string(ctx.q()));
  return ctx.from_digits(bytes);
}

}  // namespace rankfuzz::codec
