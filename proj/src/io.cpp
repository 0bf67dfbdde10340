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

#include "rankfuzz/io.hpp"

#include <fstream>
#include <sstream>

#include "rankfuzz/codec.hpp"

namespace rankfuzz::io {

namespace {

template <class T>
T field_of(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field '") + key + "': " + e.what());
  }
}

Json hex_list(std::span<const Felem> v) {
  Json out = Json::array();
  for (const auto& a : v) out.push_back(codec::element_hex(a));
  return out;
}

std::vector<Felem> parse_hex_list(const ExtField& ctx, const Json& doc, const char* key) {
  std::vector<Felem> out;
  for (const auto& s : field_of<std::vector<std::string>>(doc, key))
    out.push_back(codec::element_from_hex(ctx, s));
  return out;
}

}  // namespace

Json commitment_to_json(const Commitment& com) {
  Json doc;
  doc["q"] = com.q;
  doc["m"] = com.m;
  doc["n"] = com.n;
  doc["k"] = com.k;
  doc["s"] = com.s;
  doc["points"] = hex_list(com.points);
  doc["offset"] = hex_list(com.offset);
  doc["digest"] = digest_hex(com.digest);
  if (com.seed) doc["seed_meta"] = Json{{"seed", *com.seed}};
  return doc;
}

Commitment commitment_from_json(const Json& doc) {
  Commitment com;
  com.q = field_of<unsigned>(doc, "q");
  com.m = field_of<unsigned>(doc, "m");
  com.n = field_of<std::size_t>(doc, "n");
  com.k = field_of<std::size_t>(doc, "k");
  com.s = field_of<unsigned>(doc, "s");
  const ExtField ctx(com.q, com.m);
  com.points = parse_hex_list(ctx, doc, "points");
  com.offset = parse_hex_list(ctx, doc, "offset");
  com.digest = digest_from_hex(field_of<std::string>(doc, "digest"));
  if (doc.contains("seed_meta") && doc["seed_meta"].is_object() &&
      doc["seed_meta"].contains("seed"))
    com.seed = field_of<std::uint64_t>(doc["seed_meta"], "seed");
  if (com.points.size() != com.n || com.offset.size() != com.n)
    throw Error(ErrorCode::ParseError, "points and offset must have n entries");
  return com;
}

Json vault_to_json(const Vault& vault) {
  const auto& p = vault.params();
  Json doc;
  doc["q"] = p.q;
  doc["m"] = p.m;
  doc["n"] = p.n;
  doc["ell"] = p.ell;
  doc["s"] = p.s;
  Json points = Json::array();
  for (const auto& [x, y] : vault.sorted_points())
    points.push_back(Json::array({codec::element_hex(x), codec::element_hex(y)}));
  doc["points"] = std::move(points);
  doc["key_digest"] = digest_hex(vault.key_digest());
  return doc;
}

Vault vault_from_json(const Json& doc) {
  VaultParams p;
  p.q = field_of<unsigned>(doc, "q");
  p.m = field_of<unsigned>(doc, "m");
  p.n = field_of<std::size_t>(doc, "n");
  p.ell = field_of<std::size_t>(doc, "ell");
  p.s = field_of<unsigned>(doc, "s");
  const ExtField ctx(p.q, p.m);
  std::vector<std::pair<Felem, Felem>> points;
  for (const auto& pair : field_of<std::vector<std::vector<std::string>>>(doc, "points")) {
    if (pair.size() != 2) throw Error(ErrorCode::ParseError, "vault point must be [x, y]");
    points.emplace_back(codec::element_from_hex(ctx, pair[0]),
                        codec::element_from_hex(ctx, pair[1]));
  }
  return Vault::from_points(p, points, digest_from_hex(field_of<std::string>(doc, "key_digest")));
}

Json report_to_json(const TrialReport& report) {
  Json doc;
  doc["claim"] = report.claim;
  Json params = Json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  doc["params"] = std::move(params);
  doc["mode"] = report.exhaustive ? "exhaustive" : "sampled";
  doc["trials"] = report.trials;
  doc["successes"] = report.successes;
  doc["estimate"] = report.estimate();
  doc["failure_rate"] = report.trials ? static_cast<double>(report.trials - report.successes) /
                                           static_cast<double>(report.trials)
                                     : 0.0;
  doc["formula_numerator"] = numerator(report.formula).str();
  doc["formula_denominator"] = denominator(report.formula).str();
  doc["formula_value"] = report.formula.convert_to<double>();
  doc["standard_error"] = report.standard_error;
  doc["violations"] = report.violations;
  doc["verdict"] = verdict_name(report.verdict());
  doc["seed"] = report.seed;
  return doc;
}

std::vector<Felem> parse_element_list(const ExtField& ctx, const std::string& text) {
  std::vector<Felem> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) out.push_back(codec::element_from_hex(ctx, word));
  }
  return out;
}

std::string format_element_list(const std::vector<Felem>& elems) {
  std::string out;
  for (const auto& a : elems) out += codec::element_hex(a) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::ParseError, "write to '" + path + "' failed");
}

std::string to_text(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace rankfuzz::io
