// Copyright 2026 The udvs-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "udvs/exp_suite.hpp"
#include "udvs/udvs_bls.hpp"

// Canonical file format: a JSON envelope with base64url payloads of the
// suite's canonical byte encodings. Decoding validates every group element
// and scalar range before any operation runs; unknown version, suite,
// scheme or role identifiers are hard errors.

namespace udvs::envelope {

using nlohmann::json;

inline constexpr std::string_view kVersion = "1";

inline const std::set<std::string>& known_schemes() {
  static const std::set<std::string> s{"bb", "bls", "udvs-bb", "udvs-bls",
                                       "umdvs-bls"};
  return s;
}

inline const std::set<std::string>& known_roles() {
  static const std::set<std::string> s{
      "params",          "signer-secret", "signer-public",
      "verifier-secret", "verifier-public", "signature",
      "designated-signature", "token",    "pop"};
  return s;
}

inline const std::set<std::string>& known_suites() {
  static const std::set<std::string> s{std::string(MockSuite::kId),
                                       std::string(ExpSuite::kId)};
  return s;
}

struct Envelope {
  std::string suite;
  std::string scheme;
  std::string role;
  std::map<std::string, Bytes> fields;
  json meta = json::object();

  const Bytes& field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end()) throw DecodeError("envelope: missing field " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return fields.contains(name); }
};

inline json to_json(const Envelope& env) {
  json fields = json::object();
  for (const auto& [name, data] : env.fields) {
    fields[name] = base64url_encode(data);
  }
  json j{{"version", std::string(kVersion)},
         {"suite", env.suite},
         {"scheme", env.scheme},
         {"role", env.role},
         {"fields", fields}};
  if (!env.meta.is_null() && !env.meta.empty()) j["meta"] = env.meta;
  return j;
}

inline Envelope from_json(const json& j) {
  if (!j.is_object()) throw DecodeError("envelope: not a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "version" && key != "suite" && key != "scheme" && key != "role" &&
        key != "fields" && key != "meta") {
      throw DecodeError("envelope: unknown key " + key);
    }
  }
  Envelope env;
  if (!j.contains("version") || j.at("version") != std::string(kVersion)) {
    throw DecodeError("envelope: unknown version");
  }
  env.suite = j.value("suite", "");
  env.scheme = j.value("scheme", "");
  env.role = j.value("role", "");
  if (!known_suites().contains(env.suite)) {
    throw DecodeError("envelope: unknown suite " + env.suite);
  }
  if (!known_schemes().contains(env.scheme)) {
    throw DecodeError("envelope: unknown scheme " + env.scheme);
  }
  if (!known_roles().contains(env.role)) {
    throw DecodeError("envelope: unknown role " + env.role);
  }
  if (!j.contains("fields") || !j.at("fields").is_object()) {
    throw DecodeError("envelope: missing fields object");
  }
  for (const auto& [name, value] : j.at("fields").items()) {
    if (!value.is_string()) throw DecodeError("envelope: field not a string");
    env.fields[name] = base64url_decode(value.get<std::string>());
  }
  if (j.contains("meta")) env.meta = j.at("meta");
  return env;
}

inline std::string to_text(const Envelope& env) { return to_json(env).dump(2) + "\n"; }

inline Envelope from_text(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw DecodeError("envelope: invalid JSON");
  return from_json(j);
}

inline void write_file(const std::filesystem::path& path, const Envelope& env) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << to_text(env);
}

inline Envelope read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_text(text);
}

// --- small field codecs

inline Bytes u32_field(uint32_t v) {
  Bytes b;
  append_u32be(b, v);
  return b;
}

inline uint32_t u32_from(const Bytes& b) {
  if (b.size() != 4) throw DecodeError("envelope: bad integer field width");
  return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) |
         uint32_t(b[3]);
}

inline Bytes mpz_field(const mpz_class& v) {
  size_t width = std::max<size_t>(1, (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  return mpz_to_be(v, width);
}

// ---------------------------------------------------------------------------
// Parameters

struct Params {
  std::unique_ptr<Suite> suite;
  uint32_t salt_bits = 0;
};

inline Envelope encode_params(const Suite& suite, uint32_t salt_bits) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bb";  // parameters are scheme-independent; bb is the anchor
  env.role = "params";
  env.fields["k"] = u32_field(suite.security_bits());
  env.fields["q"] = mpz_field(suite.order());
  env.fields["p2"] = suite.encode(suite.gen2());
  env.fields["nr"] = u32_field(salt_bits);
  env.fields["h2s_tag"] = to_bytes(kHashToScalarTag);
  env.fields["h2g_tag"] = to_bytes(kHashToGroupTag);
  if (auto* exp = dynamic_cast<const ExpSuite*>(&suite)) {
    env.fields["p"] = mpz_field(exp->gt_modulus());
    env.fields["g3"] = mpz_field(exp->gt_generator());
  }
  env.meta = json{{"q_dec", suite.order().get_str(10)}};
  return env;
}

inline Params decode_params(const Envelope& env) {
  if (env.role != "params") throw DecodeError("expected a params envelope");
  if (env.field("h2s_tag") != to_bytes(kHashToScalarTag) ||
      env.field("h2g_tag") != to_bytes(kHashToGroupTag)) {
    throw DecodeError("params: unknown hash domain tags");
  }
  uint32_t k = u32_from(env.field("k"));
  uint32_t salt_bits = u32_from(env.field("nr"));
  if (salt_bits < 1 || salt_bits > 512) {
    throw DecodeError("params: salt bit length out of range");
  }
  mpz_class q = mpz_from_be(env.field("q"));
  Params params;
  params.salt_bits = salt_bits;
  try {
    if (env.suite == MockSuite::kId) {
      MockSuite probe(q, 1);
      Scalar p2 = probe.decode_scalar(env.field("p2"));
      if (p2.value == 0) throw DecodeError("params: P2 is the identity");
      params.suite = std::make_unique<MockSuite>(q, p2.value);
    } else {
      mpz_class p = mpz_from_be(env.field("p"));
      mpz_class g = mpz_from_be(env.field("g3"));
      ExpSuite probe(k, q, p, g, 1);
      Scalar p2 = probe.decode_scalar(env.field("p2"));
      if (p2.value == 0) throw DecodeError("params: P2 is the identity");
      params.suite = std::make_unique<ExpSuite>(k, q, p, g, p2.value);
    }
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError(std::string("params: ") + e.what());
  }
  if (params.suite->security_bits() != k) {
    throw DecodeError("params: security parameter does not match q");
  }
  return params;
}

// ---------------------------------------------------------------------------
// Key material. Public keys serialize in dual-group form when the suite
// lacks psi; the pairing consistency check runs again on every load.

namespace detail {

inline GroupElement decode_g(const Suite& suite, const Envelope& env,
                             const std::string& name, Group g) {
  return suite.decode(g, env.field(name));
}

/// Loads a (G2, G1) dual pair named `base`/`base`1: the G1 companion comes
/// from the file on psi-less suites and from psi otherwise.
inline std::pair<GroupElement, GroupElement> decode_dual(const Suite& suite,
                                                         const Envelope& env,
                                                         const std::string& base) {
  GroupElement g2 = decode_g(suite, env, base, Group::G2);
  GroupElement g1{Group::G1, 0};
  if (env.has(base + "1")) {
    g1 = decode_g(suite, env, base + "1", Group::G1);
    if (!(suite.pair(g1, suite.gen2()) == suite.pair(suite.gen1(), g2))) {
      throw DecodeError("key: dual-group consistency check failed for " + base);
    }
  } else if (suite.supports_psi()) {
    g1 = suite.psi(g2);
  } else {
    throw DecodeError("key: suite lacks psi and no dual-group companion for " +
                      base);
  }
  return {g2, g1};
}

inline void encode_dual(const Suite& suite, Envelope& env, const std::string& base,
                        const GroupElement& g2, const GroupElement& g1) {
  env.fields[base] = suite.encode(g2);
  if (!suite.supports_psi()) env.fields[base + "1"] = suite.encode(g1);
}

inline Scalar decode_nonzero_scalar(const Suite& suite, const Envelope& env,
                                    const std::string& name) {
  Scalar s = suite.decode_scalar(env.field(name));
  if (s.value == 0) throw DecodeError("key: zero secret " + name);
  return s;
}

}  // namespace detail

inline Envelope encode_bb_signer_secret(const Suite& suite,
                                        const bb::SignerKey& key) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bb";
  env.role = "signer-secret";
  env.fields["u"] = suite.encode_scalar(key.sk.u);
  env.fields["v"] = suite.encode_scalar(key.sk.v);
  return env;
}

inline bb::SignerKey decode_bb_signer_secret(const Suite& suite,
                                             const Envelope& env) {
  if (env.role != "signer-secret" || env.scheme != "bb") {
    throw DecodeError("expected a bb signer-secret envelope");
  }
  return bb::key_from_secret(suite, detail::decode_nonzero_scalar(suite, env, "u"),
                             detail::decode_nonzero_scalar(suite, env, "v"));
}

inline Envelope encode_bb_signer_public(const Suite& suite,
                                        const bb::SignerPublic& pk) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bb";
  env.role = "signer-public";
  detail::encode_dual(suite, env, "u2", pk.u2, pk.u1);
  detail::encode_dual(suite, env, "v2", pk.v2, pk.v1);
  return env;
}

inline bb::SignerPublic decode_bb_signer_public(const Suite& suite,
                                                const Envelope& env) {
  if (env.role != "signer-public" || env.scheme != "bb") {
    throw DecodeError("expected a bb signer-public envelope");
  }
  auto [u2, u1] = detail::decode_dual(suite, env, "u2");
  auto [v2, v1] = detail::decode_dual(suite, env, "v2");
  return bb::SignerPublic{u2, v2, u1, v1};
}

inline Envelope encode_bls_signer_secret(const Suite& suite,
                                         const bls::SignerKey& key) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bls";
  env.role = "signer-secret";
  env.fields["u"] = suite.encode_scalar(key.sk.u);
  return env;
}

inline bls::SignerKey decode_bls_signer_secret(const Suite& suite,
                                               const Envelope& env) {
  if (env.role != "signer-secret" || env.scheme != "bls") {
    throw DecodeError("expected a bls signer-secret envelope");
  }
  return bls::key_from_secret(suite,
                              detail::decode_nonzero_scalar(suite, env, "u"));
}

inline Envelope encode_bls_signer_public(const Suite& suite,
                                         const bls::SignerPublic& pk) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bls";
  env.role = "signer-public";
  detail::encode_dual(suite, env, "u2", pk.u2, pk.u1);
  return env;
}

inline bls::SignerPublic decode_bls_signer_public(const Suite& suite,
                                                  const Envelope& env) {
  if (env.role != "signer-public" || env.scheme != "bls") {
    throw DecodeError("expected a bls signer-public envelope");
  }
  auto [u2, u1] = detail::decode_dual(suite, env, "u2");
  return bls::SignerPublic{u2, u1};
}

inline Envelope encode_verifier_secret(const Suite& suite, const std::string& scheme,
                                       const VerifierKey& key) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = scheme;
  env.role = "verifier-secret";
  env.fields["u"] = suite.encode_scalar(key.sk.u);
  return env;
}

inline VerifierKey decode_verifier_secret(const Suite& suite, const Envelope& env) {
  if (env.role != "verifier-secret") {
    throw DecodeError("expected a verifier-secret envelope");
  }
  return verifier_key_from_secret(suite,
                                  detail::decode_nonzero_scalar(suite, env, "u"));
}

struct VerifierPublicFile {
  VerifierPublic pk;
  std::optional<ProofOfPossession> pop;
};

inline Envelope encode_verifier_public(const Suite& suite, const std::string& scheme,
                                       const VerifierPublic& pk,
                                       const std::optional<ProofOfPossession>& pop) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = scheme;
  env.role = "verifier-public";
  detail::encode_dual(suite, env, "u2", pk.u2, pk.u1);
  if (pop) env.fields["pop_s"] = suite.encode(pop->s);
  return env;
}

inline VerifierPublicFile decode_verifier_public(const Suite& suite,
                                                 const Envelope& env) {
  if (env.role != "verifier-public") {
    throw DecodeError("expected a verifier-public envelope");
  }
  auto [u2, u1] = detail::decode_dual(suite, env, "u2");
  VerifierPublicFile file{VerifierPublic{u2, u1}, std::nullopt};
  if (env.has("pop_s")) {
    file.pop = ProofOfPossession{detail::decode_g(suite, env, "pop_s", Group::G1)};
    if (!pop_verify(suite, file.pk, *file.pop)) {
      throw DecodeError("verifier key: proof of possession does not verify");
    }
  }
  return file;
}

// ---------------------------------------------------------------------------
// Signatures and designated signatures

inline Envelope encode_bb_signature(const Suite& suite, const bb::Signature& sig) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bb";
  env.role = "signature";
  env.fields["r"] = suite.encode_scalar(sig.r);
  env.fields["s"] = suite.encode(sig.s);
  return env;
}

inline bb::Signature decode_bb_signature(const Suite& suite, const Envelope& env) {
  if (env.role != "signature" || env.scheme != "bb") {
    throw DecodeError("expected a bb signature envelope");
  }
  return bb::Signature{suite.decode_scalar(env.field("r")),
                       detail::decode_g(suite, env, "s", Group::G1)};
}

inline Bytes salt_field(const Salt& salt) { return salt.bytes; }

inline Salt decode_salt(const Envelope& env, uint32_t salt_bits) {
  Salt salt{env.field("salt"), salt_bits};
  if (!salt.canonical()) throw DecodeError("salt: non-canonical encoding");
  return salt;
}

inline Envelope encode_bls_signature(const Suite& suite, const bls::Signature& sig) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "bls";
  env.role = "signature";
  env.fields["salt"] = salt_field(sig.salt);
  env.fields["s"] = suite.encode(sig.s);
  return env;
}

inline bls::Signature decode_bls_signature(const Suite& suite, uint32_t salt_bits,
                                           const Envelope& env) {
  if (env.role != "signature" || env.scheme != "bls") {
    throw DecodeError("expected a bls signature envelope");
  }
  return bls::Signature{decode_salt(env, salt_bits),
                        detail::decode_g(suite, env, "s", Group::G1)};
}

inline Envelope encode_bb_dsig(const Suite& suite, const bb::DesignatedSig& tau) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "udvs-bb";
  env.role = "designated-signature";
  env.fields["r"] = suite.encode_scalar(tau.r);
  env.fields["q1"] = suite.encode(tau.q1);
  env.fields["q2"] = suite.encode(tau.q2);
  env.fields["q3"] = suite.encode(tau.q3);
  return env;
}

inline bb::DesignatedSig decode_bb_dsig(const Suite& suite, const Envelope& env) {
  if (env.role != "designated-signature" || env.scheme != "udvs-bb") {
    throw DecodeError("expected a udvs-bb designated-signature envelope");
  }
  return bb::DesignatedSig{suite.decode_scalar(env.field("r")),
                           detail::decode_g(suite, env, "q1", Group::G1),
                           detail::decode_g(suite, env, "q2", Group::G1),
                           detail::decode_g(suite, env, "q3", Group::G1)};
}

inline Envelope encode_bls_dsig(const Suite& suite, const bls::DesignatedSig& tau) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "udvs-bls";
  env.role = "designated-signature";
  env.fields["salt"] = salt_field(tau.salt);
  env.fields["q1"] = suite.encode(tau.q1);
  env.fields["q2"] = suite.encode(tau.q2);
  return env;
}

inline bls::DesignatedSig decode_bls_dsig(const Suite& suite, uint32_t salt_bits,
                                          const Envelope& env) {
  if (env.role != "designated-signature" || env.scheme != "udvs-bls") {
    throw DecodeError("expected a udvs-bls designated-signature envelope");
  }
  return bls::DesignatedSig{decode_salt(env, salt_bits),
                            detail::decode_g(suite, env, "q1", Group::G1),
                            detail::decode_g(suite, env, "q2", Group::G2)};
}

namespace detail {
inline std::string q_name(size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "q%03zu", i);
  return buf;
}
}  // namespace detail

/// Multi-verifier tuples carry n explicitly; Q_i are stored (and must be
/// supplied) in lexicographic order of the encoded verifier public keys.
inline Envelope encode_bls_multi_dsig(const Suite& suite,
                                      const bls::MultiDesignatedSig& tau) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "umdvs-bls";
  env.role = "designated-signature";
  env.fields["salt"] = salt_field(tau.salt);
  env.fields["q0"] = suite.encode(tau.q0);
  env.fields["n"] = u32_field(static_cast<uint32_t>(tau.qs.size()));
  for (size_t i = 0; i < tau.qs.size(); ++i) {
    env.fields[detail::q_name(i)] = suite.encode(tau.qs[i]);
  }
  return env;
}

inline bls::MultiDesignatedSig decode_bls_multi_dsig(const Suite& suite,
                                                     uint32_t salt_bits,
                                                     const Envelope& env) {
  if (env.role != "designated-signature" || env.scheme != "umdvs-bls") {
    throw DecodeError("expected a umdvs-bls designated-signature envelope");
  }
  uint32_t n = u32_from(env.field("n"));
  if (n < 1 || n > 1000) throw DecodeError("umdvs: n out of range");
  bls::MultiDesignatedSig tau;
  tau.salt = decode_salt(env, salt_bits);
  tau.q0 = detail::decode_g(suite, env, "q0", Group::G1);
  for (uint32_t i = 0; i < n; ++i) {
    tau.qs.push_back(detail::decode_g(suite, env, detail::q_name(i), Group::G2));
  }
  return tau;
}

// ---------------------------------------------------------------------------
// Delegation tokens. Files embed the public keys they bind so consistency
// is re-verified on every load; the meta hint is informational only.

struct BbTokenFile {
  bb::DelegationToken token;
  bb::SignerPublic pk_s;
  VerifierPublic pk_v;
};

inline Envelope encode_bb_token(const Suite& suite, const bb::DelegationToken& token,
                                const bb::SignerPublic& pk_s,
                                const VerifierPublic& pk_v) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "udvs-bb";
  env.role = "token";
  env.fields["k1"] = suite.encode(token.k1);
  env.fields["k2"] = suite.encode(token.k2);
  detail::encode_dual(suite, env, "ua2", pk_s.u2, pk_s.u1);
  detail::encode_dual(suite, env, "va2", pk_s.v2, pk_s.v1);
  detail::encode_dual(suite, env, "ub2", pk_v.u2, pk_v.u1);
  env.meta = json{{"consistent", true}};
  return env;
}

inline BbTokenFile decode_bb_token(const Suite& suite, const Envelope& env) {
  if (env.role != "token" || env.scheme != "udvs-bb") {
    throw DecodeError("expected a udvs-bb token envelope");
  }
  auto [ua2, ua1] = detail::decode_dual(suite, env, "ua2");
  auto [va2, va1] = detail::decode_dual(suite, env, "va2");
  auto [ub2, ub1] = detail::decode_dual(suite, env, "ub2");
  BbTokenFile file{
      bb::DelegationToken{detail::decode_g(suite, env, "k1", Group::G1),
                          detail::decode_g(suite, env, "k2", Group::G1)},
      bb::SignerPublic{ua2, va2, ua1, va1}, VerifierPublic{ub2, ub1}};
  if (!bb::token_consistent(suite, file.token, file.pk_s, file.pk_v)) {
    throw DecodeError("token: consistency pairing check failed");
  }
  return file;
}

struct BlsTokenFile {
  bls::DelegationElement del;
  bls::SignerPublic pk_s;
  VerifierPublic pk_v;
};

inline Envelope encode_bls_token(const Suite& suite,
                                 const bls::DelegationElement& del,
                                 const bls::SignerPublic& pk_s,
                                 const VerifierPublic& pk_v) {
  Envelope env;
  env.suite = std::string(suite.id());
  env.scheme = "udvs-bls";
  env.role = "token";
  env.fields["d"] = suite.encode(del.d);
  detail::encode_dual(suite, env, "ua2", pk_s.u2, pk_s.u1);
  detail::encode_dual(suite, env, "ub2", pk_v.u2, pk_v.u1);
  env.meta = json{{"consistent", true}};
  return env;
}

inline BlsTokenFile decode_bls_token(const Suite& suite, const Envelope& env) {
  if (env.role != "token" || env.scheme != "udvs-bls") {
    throw DecodeError("expected a udvs-bls token envelope");
  }
  auto [ua2, ua1] = detail::decode_dual(suite, env, "ua2");
  auto [ub2, ub1] = detail::decode_dual(suite, env, "ub2");
  BlsTokenFile file{
      bls::DelegationElement{detail::decode_g(suite, env, "d", Group::G2)},
      bls::SignerPublic{ua2, ua1}, VerifierPublic{ub2, ub1}};
  if (!bls::delegation_consistent(suite, file.del, file.pk_s, file.pk_v)) {
    throw DecodeError("token: consistency pairing check failed");
  }
  return file;
}

}  // namespace udvs::envelope
