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

#include <string>
#include <vector>

#include <json.hpp>

#include "rankfuzz/analysis.hpp"
#include "rankfuzz/commitment.hpp"
#include "rankfuzz/vault.hpp"

// JSON documents for commitments, vaults and trial reports, plus the plain
// text list-of-hex format used for witnesses, features and keys. Parse
// failures throw Error(ParseError).

namespace rankfuzz::io {

using Json = nlohmann::ordered_json;

Json commitment_to_json(const Commitment& com);
Commitment commitment_from_json(const Json& doc);

Json vault_to_json(const Vault& vault);
Vault vault_from_json(const Json& doc);

Json report_to_json(const TrialReport& report);

/// Whitespace-separated hex elements; '#' starts a comment.
std::vector<Felem> parse_element_list(const ExtField& ctx, const std::string& text);
std::string format_element_list(const std::vector<Felem>& elems);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// dump() with two-space indent and a trailing newline.
std::string to_text(const Json& doc);

}  // namespace rankfuzz::io
