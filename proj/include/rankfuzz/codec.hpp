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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankfuzz/field.hpp"

// Canonical byte serialization. These bytes are what digests are computed
// over, so the layout is fixed:
//   element  m bytes, byte i = coefficient of x^i
//   vector   concatenation of elements in index order
//   matrix   rows, cols as 4-byte little-endian, then row-major entries

namespace rankfuzz::codec {

using Bytes = std::vector<std::uint8_t>;

Bytes element_bytes(const Felem& a);
Bytes vector_bytes(std::span<const Felem> v);
Bytes matrix_bytes(const MatFq& mat);

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Throws ParseError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

std::string element_hex(const Felem& a);
Felem element_from_hex(const ExtField& ctx, std::string_view hex);

}  // namespace rankfuzz::codec
