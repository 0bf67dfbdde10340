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

#include "rankfuzz/digest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

#include "rankfuzz/codec.hpp"

namespace rankfuzz {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("SHA-256 computation failed");
  return out;
}

std::string digest_hex(const Digest& d) { return codec::to_hex(d); }

Digest digest_from_hex(const std::string& hex) {
  const auto bytes = codec::from_hex(hex);
  if (bytes.size() != 32) throw Error(ErrorCode::ParseError, "digest must be 64 hex characters");
  Digest d{};
  std::copy(bytes.begin(), bytes.end(), d.begin());
  return d;
}

}  // namespace rankfuzz
