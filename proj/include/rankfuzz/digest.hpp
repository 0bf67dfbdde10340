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

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace rankfuzz {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256.
Digest sha256(std::span<const std::uint8_t> data);

std::string digest_hex(const Digest& d);
/// Throws ParseError unless `hex` is exactly 64 hex characters.
Digest digest_from_hex(const std::string& hex);

}  // namespace rankfuzz
