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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "rankfuzz/analysis.hpp"
#include "rankfuzz/codec.hpp"
#include "rankfuzz/commitment.hpp"
#include "rankfuzz/io.hpp"
#include "rankfuzz/vault.hpp"

namespace rankfuzz::cli {
namespace {

using io::Json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<unsigned> q, m, s, u, v;
  std::optional<std::size_t> n, k, ell;
  std::optional<std::uint64_t> points_seed;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::string out, format = "json", distribution = "overlap";
  std::string witness, commitment, features, key, vault, points;
  std::string claim;
  bool strict = false;
  bool serial = false;
};

template <typename T>
T need(const std::optional<T>& value, const char* flag) {
  if (!value) throw Usage(std::string("missing required flag --") + flag);
  return *value;
}

std::string need_path(const std::string& path, const char* flag) {
  if (path.empty()) throw Usage(std::string("missing required flag --") + flag);
  return path;
}

Exec exec_of(const Options& o) { return o.serial ? Exec::Serial : Exec::Parallel; }

std::vector<std::string> hex_list(std::span<const Felem> elems) {
  std::vector<std::string> out;
  for (const auto& e : elems) out.push_back(codec::element_hex(e));
  return out;
}

// Flat "key: value" rendering of a JSON object for --format text.
std::string render_text(const Json& doc) {
  std::ostringstream os;
  for (const auto& [key, value] : doc.items()) {
    os << key << ':';
    if (value.is_array()) {
      for (const auto& x : value) os << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
    } else if (value.is_object()) {
      for (const auto& [k, x] : value.items()) os << ' ' << k << '=' << x.dump();
    } else {
      os << ' ' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    os << '\n';
  }
  return os.str();
}

void emit(const Json& doc, const Options& o, std::ostream& out) {
  out << (o.format == "text" ? render_text(doc) : io::to_text(doc));
}

std::vector<Felem> read_elements(const ExtField& ctx, const std::string& path) {
  return io::parse_element_list(ctx, io::read_file(path));
}

std::vector<Felem> code_points(const ExtField& ctx, std::size_t n, const Options& o) {
  if (!o.points.empty()) return read_elements(ctx, o.points);
  if (o.points_seed) {
    Rng rng(*o.points_seed);
    return random_independent(ctx, n, rng);
  }
  std::vector<Felem> basis;
  for (std::size_t i = 0; i < std::min<std::size_t>(n, ctx.m()); ++i)
    basis.push_back(ctx.basis(static_cast<unsigned>(i)));
  if (basis.size() < n) throw Error(ErrorCode::BadDimensions, "need n <= m");
  return basis;
}

// --- commands ---------------------------------------------------------------

int field_info(const Options& o, std::ostream& out) {
  const ExtField ctx(need(o.q, "q"), need(o.m, "m"));
  Json doc;
  doc["q"] = ctx.q();
  doc["m"] = ctx.m();
  Json modulus = Json::array();
  for (auto c : ctx.modulus()) modulus.push_back(c);
  doc["modulus"] = modulus;
  doc["order"] = BigInt(boost::multiprecision::pow(BigInt(ctx.q()), ctx.m())).str();
  // The search is exhaustive in index order; only run it where that is cheap.
  const auto order = ctx.order();
  if (order && *order <= (1u << 20)) {
    doc["normal_element"] = codec::element_hex(find_normal_element(ctx));
  } else {
    doc["normal_element"] = nullptr;
  }
  emit(doc, o, out);
  return kAccept;
}

int commit_cmd(const Options& o, std::ostream& out) {
  const ExtField ctx(need(o.q, "q"), need(o.m, "m"));
  const std::size_t n = need(o.n, "n");
  const GabidulinCode code(ctx, n, need(o.k, "k"), o.s.value_or(1), code_points(ctx, n, o));
  const auto b = read_elements(ctx, need_path(o.witness, "witness"));
  Rng rng(o.seed);
  Commitment com = commit(code, b, rng);
  com.seed = o.seed;
  const std::string text = io::to_text(io::commitment_to_json(com));
  if (o.out.empty()) {
    out << text;
  } else {
    io::write_file(o.out, text);
  }
  return kAccept;
}

int verify_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const Commitment com =
      io::commitment_from_json(Json::parse(io::read_file(need_path(o.commitment, "commitment"))));
  const GabidulinCode code = commitment_code(com);
  const auto b_prime = read_elements(code.field(), need_path(o.witness, "witness"));
  const VerifyResult res = verify(code, b_prime, com);
  Json doc;
  if (res.accepted) {
    doc["result"] = "accept";
    doc["error_rank"] = res.error_rank;
    doc["codeword"] = hex_list(res.codeword);
  } else {
    doc["result"] = "reject";
    doc["reason"] =
        res.reason == RejectReason::DigestMismatch ? "digest_mismatch" : "decoding_failure";
    err << "reject: " << doc["reason"].get<std::string>() << '\n';
  }
  emit(doc, o, out);
  if (!o.out.empty()) io::write_file(o.out, io::to_text(doc));
  return res.accepted ? kAccept : kReject;
}

int lock_cmd(const Options& o, std::ostream& out) {
  const VaultParams params{need(o.q, "q"), need(o.m, "m"), need(o.n, "n"), need(o.ell, "ell"),
                           o.s.value_or(1)};
  params.validate();
  const ExtField ctx = params.field();
  const FeatureSet a(ctx, read_elements(ctx, need_path(o.features, "features")));
  const SecretKey key{read_elements(ctx, need_path(o.key, "key"))};
  Rng rng(o.seed);
  const Vault vault = lock(params, a, key, rng);
  const std::string text = io::to_text(io::vault_to_json(vault));
  if (o.out.empty()) {
    out << text;
  } else {
    io::write_file(o.out, text);
  }
  return kAccept;
}

int unlock_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const Vault vault = io::vault_from_json(Json::parse(io::read_file(need_path(o.vault, "vault"))));
  const ExtField& ctx = vault.field();
  const FeatureSet w(ctx, read_elements(ctx, need_path(o.features, "features")));
  if (w.size() != vault.params().n)
    throw Error(ErrorCode::ParamMismatch, "witness must have n elements");
  const UnlockResult res = unlock(vault, w);
  Json doc;
  if (res.key) {
    doc["result"] = "accept";
    doc["error_rank"] = res.error_rank.value_or(0);
    doc["key"] = hex_list(res.key->coeffs);
    if (!o.out.empty()) io::write_file(o.out, io::format_element_list(res.key->coeffs));
  } else {
    doc["result"] = "reject";
    doc["reason"] = "unlock_failure";
    doc["detail"] =
        res.failure == UnlockFailure::DigestMismatch ? "digest_mismatch" : "decoding_failure";
    err << "reject: unlock_failure (" << doc["detail"].get<std::string>() << ")\n";
  }
  emit(doc, o, out);
  return res.key ? kAccept : kReject;
}

WitnessDistribution distribution_of(const std::string& name) {
  if (name == "overlap") return WitnessDistribution::UniformOverlap;
  if (name == "set") return WitnessDistribution::UniformSet;
  throw Usage("--distribution must be 'overlap' or 'set'");
}

int simulate_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const unsigned q = o.q.value_or(2);
  const auto n = [&] { return static_cast<unsigned>(need(o.n, "n")); };
  const auto ell = static_cast<unsigned>(o.ell.value_or(1));
  const unsigned s = o.s.value_or(1);
  TrialReport report;
  if (o.claim == "lemma2") {
    report = mc_lemma2(q, need(o.m, "m"), n(), o.trials, o.seed, exec_of(o));
  } else if (o.claim == "prop2") {
    if (o.m && *o.m != n()) throw Usage("prop2 needs m = n");
    report = mc_prop_delta(q, n(), need(o.u, "u"), ell, s, o.trials, o.seed, exec_of(o));
  } else if (o.claim == "prop4") {
    report = mc_prop_deltam(q, need(o.m, "m"), n(), need(o.u, "u"), need(o.v, "v"), ell, s,
                            o.trials, o.seed, exec_of(o));
  } else if (o.claim == "thm3") {
    const unsigned m = o.m.value_or(n());
    report = mc_unconditional(Scheme::Basic, q, m, n(), ell, s, distribution_of(o.distribution),
                              o.trials, o.seed, exec_of(o));
  } else if (o.claim == "thm5") {
    report = mc_unconditional(Scheme::Generalized, q, need(o.m, "m"), n(), ell, s,
                              distribution_of(o.distribution), o.trials, o.seed, exec_of(o));
  } else if (o.claim == "roundtrip") {
    report = mc_roundtrip(q, need(o.m, "m"), n(), static_cast<unsigned>(need(o.k, "k")), s,
                          o.trials, o.seed, exec_of(o));
  } else {
    throw Usage("unknown claim '" + o.claim + "'");
  }
  const Json doc = io::report_to_json(report);
  if (!o.out.empty()) io::write_file(o.out, io::to_text(doc));
  emit(doc, o, out);
  switch (report.verdict()) {
    case Verdict::ExactMatch:
    case Verdict::Within3Sigma:
      return kAccept;
    case Verdict::Flagged:
      err << "verdict: flagged\n";
      return o.strict ? kReject : kAccept;
    case Verdict::Failed:
      err << "verdict: failed\n";
      return kReject;
  }
  return kReject;
}

void add_params(CLI::App* cmd, Options& o, bool code_dim, bool key_dim) {
  cmd->add_option("--q", o.q, "Base field size (prime)");
  cmd->add_option("--m", o.m, "Extension degree");
  cmd->add_option("--n", o.n, "Length / feature count");
  if (code_dim) cmd->add_option("--k", o.k, "Code dimension");
  if (key_dim) cmd->add_option("--ell", o.ell, "Key length");
  cmd->add_option("--s", o.s, "Twist exponent (default 1)");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "Output file");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rank-metric fuzzy commitments and linearized-polynomial fuzzy vaults", "rankfuzz"};
  app.require_subcommand(1);

  auto* info = app.add_subcommand("field-info", "Describe F_{q^m}: modulus, order, normal element");
  info->add_option("--q", o.q)->required();
  info->add_option("--m", o.m)->required();
  info->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* com = app.add_subcommand("commit", "Commit to a witness vector");
  add_params(com, o, true, false);
  add_common(com, o);
  com->add_option("--witness", o.witness, "Witness file (n hex elements)")->required();
  com->add_option("--points", o.points, "Evaluation points file (default: 1, x, ..., x^(n-1))");
  com->add_option("--points-seed", o.points_seed, "Draw random independent evaluation points");
  for (const char* f : {"--q", "--m", "--n", "--k"}) com->get_option(f)->required();

  auto* ver = app.add_subcommand("verify", "Check a candidate witness against a commitment");
  ver->add_option("--commitment", o.commitment)->required();
  ver->add_option("--witness", o.witness)->required();
  ver->add_option("--out", o.out);
  ver->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* vault = app.add_subcommand("vault", "Fuzzy vault operations");
  vault->require_subcommand(1);
  auto* lk = vault->add_subcommand("lock", "Lock a key under a feature set");
  add_params(lk, o, false, true);
  add_common(lk, o);
  lk->add_option("--features", o.features)->required();
  lk->add_option("--key", o.key)->required();
  for (const char* f : {"--q", "--m", "--n", "--ell"}) lk->get_option(f)->required();
  auto* ul = vault->add_subcommand("unlock", "Recover the key with a witness feature set");
  ul->add_option("--vault", o.vault)->required();
  ul->add_option("--features", o.features)->required();
  ul->add_option("--out", o.out, "Write the recovered key here");
  ul->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* sim = app.add_subcommand("simulate", "Run a Monte-Carlo or exhaustive experiment");
  sim->add_option("claim", o.claim, "lemma2 | prop2 | prop4 | thm3 | thm5 | roundtrip")
      ->required()
      ->check(CLI::IsMember({"lemma2", "prop2", "prop4", "thm3", "thm5", "roundtrip"}));
  add_params(sim, o, true, true);
  add_common(sim, o);
  sim->add_option("--u", o.u, "|A n W|");
  sim->add_option("--v", o.v, "dim(<A> n <W>)");
  sim->add_option("--trials", o.trials, "Trial count (default 1000)");
  sim->add_option("--distribution", o.distribution, "Witness distribution: overlap | set");
  sim->add_flag("--strict", o.strict, "Treat a flagged verdict as failure");
  sim->add_flag("--serial", o.serial, "Use the serial reference runner");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAccept;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAccept;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*info) return field_info(o, out);
    if (*com) return commit_cmd(o, out);
    if (*ver) return verify_cmd(o, out, err);
    if (*lk) return lock_cmd(o, out);
    if (*ul) return unlock_cmd(o, out, err);
    if (*sim) return simulate_cmd(o, out, err);
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: parse_error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rankfuzz::cli
