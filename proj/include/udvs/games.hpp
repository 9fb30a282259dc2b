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

#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "udvs/udvs_bls.hpp"

// Desk-scale embodiment of the two security experiments (existential
// forgery under chosen-message attack, and privacy of the signer's
// identity) plus the source-hiding checker. Adversaries are strategy
// values driven by the harness through explicit oracle interfaces: no
// ambient authority, every run replayable from its randomness tape.

namespace udvs::games {

struct GameEnv {
  const Suite& suite;
  ScalarHasher h2s;
  GroupHasher h2g;
};

inline GameEnv make_env(const Suite& suite) {
  return GameEnv{suite, ScalarHasher(suite),
                 GroupHasher(suite, default_salt_bits(suite.security_bits()))};
}

// ---------------------------------------------------------------------------
// Scheme adapters: a uniform face over the two UDVS schemes so the
// experiment runners can be written once.

struct BbUdvs {
  static constexpr std::string_view kId = "udvs-bb";
  using SignerKey = bb::SignerKey;
  using SignerPublic = bb::SignerPublic;
  using Sig = bb::Signature;
  using DSig = bb::DesignatedSig;

  static SignerKey keygen_signer(const GameEnv& env, RandomSource& rng) {
    return bb::keygen(env.suite, rng);
  }
  static Sig sign(const GameEnv& env, const SignerKey& key, BytesView m,
                  RandomSource& rng) {
    return bb::sign(env.suite, env.h2s, key.sk, m, rng);
  }
  static DSig designate(const GameEnv& env, const SignerPublic& pk_s,
                        const VerifierPublic& pk_v, BytesView m, const Sig& sig,
                        RandomSource& rng) {
    return bb::designate(env.suite, env.h2s, pk_s, pk_v, m, sig, rng);
  }
  static bool dverify(const GameEnv& env, const SignerPublic& pk_s,
                      const VerifierKey& vk, BytesView m, const DSig& tau) {
    return bb::dverify_public(env.suite, env.h2s, pk_s, vk.pk, m, tau).accepted;
  }
  static DSig fake(const GameEnv& env, const SignerPublic& pk_s,
                   const VerifierSecret& sk_v, BytesView m, RandomSource& rng) {
    return bb::fake(env.suite, env.h2s, pk_s, sk_v, m, rng);
  }
  static DSig rerandomize(const GameEnv& env, const DSig& tau, RandomSource& rng) {
    return bb::rerandomize(env.suite, tau, rng);
  }
  static DSig random_dsig(const GameEnv& env, RandomSource& rng) {
    return DSig{env.suite.sample_scalar(rng), env.suite.sample(Group::G1, rng),
                env.suite.sample(Group::G1, rng), env.suite.sample(Group::G1, rng)};
  }
  static Bytes encode_dsig(const GameEnv& env, const DSig& tau) {
    Bytes out = env.suite.encode_scalar(tau.r);
    append(out, env.suite.encode(tau.q1));
    append(out, env.suite.encode(tau.q2));
    append(out, env.suite.encode(tau.q3));
    return out;
  }
  static Bytes encode_sig(const GameEnv& env, const Sig& sig) {
    Bytes out = env.suite.encode_scalar(sig.r);
    append(out, env.suite.encode(sig.s));
    return out;
  }
};

struct BlsUdvs {
  static constexpr std::string_view kId = "udvs-bls";
  using SignerKey = bls::SignerKey;
  using SignerPublic = bls::SignerPublic;
  using Sig = bls::Signature;
  using DSig = bls::DesignatedSig;

  static SignerKey keygen_signer(const GameEnv& env, RandomSource& rng) {
    return bls::keygen(env.suite, rng);
  }
  static Sig sign(const GameEnv& env, const SignerKey& key, BytesView m,
                  RandomSource& rng) {
    return bls::sign(env.suite, env.h2g, key.sk, m, rng);
  }
  static DSig designate(const GameEnv& env, const SignerPublic& pk_s,
                        const VerifierPublic& pk_v, BytesView m, const Sig& sig,
                        RandomSource& rng) {
    return bls::designate(env.suite, env.h2g, pk_s, pk_v, m, sig, rng);
  }
  static bool dverify(const GameEnv& env, const SignerPublic& pk_s,
                      const VerifierKey& vk, BytesView m, const DSig& tau) {
    return bls::dverify(env.suite, env.h2g, pk_s, vk.sk, m, tau).accepted;
  }
  static DSig fake(const GameEnv& env, const SignerPublic& pk_s,
                   const VerifierSecret& sk_v, BytesView m, RandomSource& rng) {
    return bls::fake(env.suite, env.h2g, pk_s, sk_v, m, rng);
  }
  static DSig rerandomize(const GameEnv& env, const DSig& tau, RandomSource& rng) {
    return bls::rerandomize(env.suite, tau, rng);
  }
  static DSig random_dsig(const GameEnv& env, RandomSource& rng) {
    return DSig{sample_salt(env.h2g.salt_bits(), rng),
                env.suite.sample(Group::G1, rng),
                env.suite.sample(Group::G2, rng)};
  }
  static Bytes encode_dsig(const GameEnv& env, const DSig& tau) {
    Bytes out = tau.salt.bytes;
    append(out, env.suite.encode(tau.q1));
    append(out, env.suite.encode(tau.q2));
    return out;
  }
  static Bytes encode_sig(const GameEnv& env, const Sig& sig) {
    Bytes out = sig.salt.bytes;
    append(out, env.suite.encode(sig.s));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Transcripts

struct OracleEvent {
  std::string kind;
  std::string in_hash;
  std::string out_hash;
};

struct ExperimentTranscript {
  std::string suite_id;
  std::string scheme_id;
  std::vector<OracleEvent> events;
  uint64_t q_sign = 0;
  uint64_t q_verify = 0;
  uint64_t q_hash = 0;
  Bytes forged_message;   // m*
  bool final_dverify = false;
  bool fresh = false;     // m* not in L
  bool outcome = false;   // final_dverify && fresh
  std::string violation;  // non-empty when the adversary broke protocol

  /// Line-oriented log, one oracle event per line, for regression diffing.
  std::string to_log() const {
    std::ostringstream os;
    os << "suite " << suite_id << "\n";
    os << "scheme " << scheme_id << "\n";
    for (const auto& e : events) {
      os << "event " << e.kind << " " << e.in_hash << " " << e.out_hash << "\n";
    }
    os << "counters qS=" << q_sign << " qV=" << q_verify << " qH=" << q_hash
       << "\n";
    os << "final dverify=" << int(final_dverify) << " fresh=" << int(fresh)
       << " outcome=" << int(outcome);
    if (!violation.empty()) os << " violation=" << violation;
    os << "\n";
    return os.str();
  }
};

namespace detail {
inline std::string short_hash(BytesView data) {
  return to_hex(BytesView(sha256(data).data(), 8));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// The chosen-message forgery experiment

struct EfcmaLimits {
  uint64_t max_sign = 1u << 20;
  uint64_t max_verify = 1u << 20;
  /// UDVS-BB is publicly verifiable, so its analysis drops the verifying
  /// oracle; the harness supports both configurations.
  bool verify_oracle = true;
};

template <class S>
struct EfcmaOracles {
  /// Returns nothing once the query budget is spent (the harness truncates
  /// the run and records the attempt).
  std::function<std::optional<typename S::Sig>(BytesView)> sign;
  std::function<std::optional<bool>(BytesView, const typename S::DSig&)> dverify;
  // Random-oracle bookkeeping; same values as hashing directly.
  std::function<Scalar(BytesView)> hash_scalar;
  std::function<GroupElement(BytesView, const Salt&)> hash_g1;
};

template <class S>
class EfcmaAdversary {
 public:
  virtual ~EfcmaAdversary() = default;
  /// Returns the forgery attempt (m*, tau*), or nothing to concede.
  virtual std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv& env, const typename S::SignerPublic& pk_s,
      const VerifierPublic& pk_v, EfcmaOracles<S>& oracles, RandomSource& rng) = 0;
};

/// One run of the forgery experiment: fresh keys, oracle bookkeeping of the
/// signed-message set L, final designated verification, outcome 1 only when
/// the forgery verifies and m* was never signed.
template <class S>
ExperimentTranscript run_efcma(const GameEnv& env, EfcmaAdversary<S>& adversary,
                               const EfcmaLimits& limits, RandomSource& rng,
                               const typename S::SignerKey* forced_signer = nullptr,
                               const VerifierKey* forced_verifier = nullptr) {
  ExperimentTranscript tr;
  tr.suite_id = std::string(env.suite.id());
  tr.scheme_id = std::string(S::kId);

  typename S::SignerKey signer =
      forced_signer ? *forced_signer : S::keygen_signer(env, rng);
  VerifierKey verifier =
      forced_verifier ? *forced_verifier : keygen_verifier(env.suite, rng);

  std::set<Bytes> signed_messages;

  EfcmaOracles<S> oracles;
  oracles.sign = [&](BytesView m) -> std::optional<typename S::Sig> {
    if (tr.q_sign >= limits.max_sign) {
      tr.events.push_back({"sign-truncated", detail::short_hash(m), "-"});
      return std::nullopt;
    }
    ++tr.q_sign;
    auto sig = S::sign(env, signer, m, rng);
    signed_messages.insert(Bytes(m.begin(), m.end()));
    tr.events.push_back({"sign", detail::short_hash(m),
                         detail::short_hash(S::encode_sig(env, sig))});
    return sig;
  };
  oracles.dverify = [&](BytesView m,
                        const typename S::DSig& tau) -> std::optional<bool> {
    if (!limits.verify_oracle) {
      tr.events.push_back({"dverify-disabled", detail::short_hash(m), "-"});
      return std::nullopt;
    }
    if (tr.q_verify >= limits.max_verify) {
      tr.events.push_back({"dverify-truncated", detail::short_hash(m), "-"});
      return std::nullopt;
    }
    ++tr.q_verify;
    bool ok = S::dverify(env, signer.pk, verifier, m, tau);
    Bytes in(m.begin(), m.end());
    append(in, S::encode_dsig(env, tau));
    tr.events.push_back({"dverify", detail::short_hash(in), ok ? "1" : "0"});
    return ok;
  };
  oracles.hash_scalar = [&](BytesView m) {
    ++tr.q_hash;
    Scalar h = env.h2s(m);
    tr.events.push_back({"hash", detail::short_hash(m),
                         detail::short_hash(env.suite.encode_scalar(h))});
    return h;
  };
  oracles.hash_g1 = [&](BytesView m, const Salt& salt) {
    ++tr.q_hash;
    GroupElement h = env.h2g(m, salt);
    Bytes in(m.begin(), m.end());
    append(in, salt.bytes);
    tr.events.push_back({"hash", detail::short_hash(in),
                         detail::short_hash(env.suite.encode(h))});
    return h;
  };

  std::optional<std::pair<Bytes, typename S::DSig>> forgery;
  try {
    forgery = adversary.run(env, signer.pk, verifier.pk, oracles, rng);
  } catch (const Error& e) {
    tr.violation = e.what();
    tr.outcome = false;
    return tr;
  }
  if (!forgery) {
    tr.violation = "no-forgery";
    tr.outcome = false;
    return tr;
  }

  tr.forged_message = forgery->first;
  tr.final_dverify = S::dverify(env, signer.pk, verifier, tr.forged_message,
                                forgery->second);
  tr.fresh = !signed_messages.contains(tr.forged_message);
  tr.outcome = tr.final_dverify && tr.fresh;
  Bytes fin = tr.forged_message;
  append(fin, S::encode_dsig(env, forgery->second));
  tr.events.push_back({"forgery", detail::short_hash(fin),
                       tr.outcome ? "1" : "0"});
  return tr;
}

// --- Canned adversaries for the sanity criteria.

/// Outputs garbage: a random message with uniform tuple elements.
template <class S>
class NullAdversary : public EfcmaAdversary<S> {
 public:
  std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv& env, const typename S::SignerPublic&, const VerifierPublic&,
      EfcmaOracles<S>&, RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    return std::make_pair(m, S::random_dsig(env, rng));
  }
};

/// Queries the signing oracle, designates honestly and returns the result:
/// the tuple verifies but m is in L, so freshness scores it 0.
template <class S>
class ReplayAdversary : public EfcmaAdversary<S> {
 public:
  std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv& env, const typename S::SignerPublic& pk_s,
      const VerifierPublic& pk_v, EfcmaOracles<S>& oracles,
      RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    auto sig = oracles.sign(m);
    if (!sig) return std::nullopt;
    return std::make_pair(m, S::designate(env, pk_s, pk_v, m, *sig, rng));
  }
};

/// Replay variant that re-randomizes the designated tuple first; still a
/// non-win by freshness even though the tuple passes DVerify.
template <class S>
class RerandomizingAdversary : public EfcmaAdversary<S> {
 public:
  std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv& env, const typename S::SignerPublic& pk_s,
      const VerifierPublic& pk_v, EfcmaOracles<S>& oracles,
      RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    auto sig = oracles.sign(m);
    if (!sig) return std::nullopt;
    auto tau = S::designate(env, pk_s, pk_v, m, *sig, rng);
    return std::make_pair(m, S::rerandomize(env, tau, rng));
  }
};

/// Holds the verifier secret out of band and fakes on a fresh message.
/// Scores 1 by design: Fake passing DVerify is the point of the scheme,
/// not a forgery break.
template <class S>
class InsiderFakeAdversary : public EfcmaAdversary<S> {
 public:
  explicit InsiderFakeAdversary(VerifierSecret sk_v) : sk_v_(std::move(sk_v)) {}

  std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv& env, const typename S::SignerPublic& pk_s,
      const VerifierPublic&, EfcmaOracles<S>&, RandomSource& rng) override {
    Bytes m = to_bytes("fresh message, never signed");
    return std::make_pair(m, S::fake(env, pk_s, sk_v_, m, rng));
  }

 private:
  VerifierSecret sk_v_;
};

// ---------------------------------------------------------------------------
// The privacy-of-signer's-identity experiment

template <class S>
struct PsiOracles {
  std::function<std::optional<typename S::Sig>(BytesView, int)> sign;
  std::function<std::optional<bool>(BytesView, const typename S::DSig&, int)>
      dverify;
};

template <class S>
struct PsiView {
  const typename S::SignerPublic& pk0;
  const typename S::SignerPublic& pk1;
  const VerifierPublic& pk_v;
};

template <class S>
class PsiStrategy {
 public:
  virtual ~PsiStrategy() = default;
  virtual Bytes find(const GameEnv& env, const PsiView<S>& view,
                     PsiOracles<S>& oracles, RandomSource& rng) = 0;
  virtual int guess(const GameEnv& env, const PsiView<S>& view, BytesView m_star,
                    const typename S::DSig& challenge, PsiOracles<S>& oracles,
                    RandomSource& rng) = 0;
};

struct PsiReport {
  uint64_t trials = 0;
  uint64_t violations = 0;  // trials scored 0 by the freshness rule
  double p_out1_b0 = 0.0;
  double p_out1_b1 = 0.0;
  double advantage = 0.0;
};

/// Estimates |Pr[out=1 | b=0] - Pr[out=1 | b=1]| over paired trials: both
/// branches of a trial replay the same randomness tape, only the challenge
/// key differs, which strips shared noise out of the estimate.
template <class S>
PsiReport run_psi(const GameEnv& env, PsiStrategy<S>& strategy, uint64_t trials,
                  RandomSource& master) {
  if (trials < 1) throw Error("run_psi: trials must be >= 1");
  PsiReport report;
  report.trials = trials;
  uint64_t ones[2] = {0, 0};

  for (uint64_t i = 0; i < trials; ++i) {
    const uint64_t tape_seed = master.next_u64();
    for (int b = 0; b < 2; ++b) {
      Drbg tape(tape_seed, "psi-trial");
      auto signer0 = S::keygen_signer(env, tape);
      auto signer1 = S::keygen_signer(env, tape);
      VerifierKey verifier = keygen_verifier(env.suite, tape);
      std::set<Bytes> touched;

      PsiOracles<S> oracles;
      oracles.sign = [&](BytesView m, int which) -> std::optional<typename S::Sig> {
        if (which != 0 && which != 1) return std::nullopt;
        touched.insert(Bytes(m.begin(), m.end()));
        return S::sign(env, which == 0 ? signer0 : signer1, m, tape);
      };
      oracles.dverify = [&](BytesView m, const typename S::DSig& tau,
                            int which) -> std::optional<bool> {
        if (which != 0 && which != 1) return std::nullopt;
        touched.insert(Bytes(m.begin(), m.end()));
        return S::dverify(env, which == 0 ? signer0.pk : signer1.pk, verifier, m,
                          tau);
      };

      PsiView<S> view{signer0.pk, signer1.pk, verifier.pk};
      Bytes m_star = strategy.find(env, view, oracles, tape);
      const auto& chosen = b == 0 ? signer0 : signer1;
      auto sig = S::sign(env, chosen, m_star, tape);
      auto challenge = S::designate(env, chosen.pk, verifier.pk, m_star, sig, tape);
      int b_star = strategy.guess(env, view, m_star, challenge, oracles, tape);

      int out;
      if (touched.contains(m_star)) {
        out = 0;  // freshness rule: the trial is scored zero
        ++report.violations;
      } else {
        out = b_star == 1 ? 1 : 0;
      }
      ones[b] += uint64_t(out);
    }
  }
  report.p_out1_b0 = double(ones[0]) / double(trials);
  report.p_out1_b1 = double(ones[1]) / double(trials);
  report.advantage = std::abs(report.p_out1_b0 - report.p_out1_b1);
  return report;
}

// --- Canned distinguishers.

template <class S>
class CoinFlipPsi : public PsiStrategy<S> {
 public:
  Bytes find(const GameEnv&, const PsiView<S>&, PsiOracles<S>&,
             RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    return m;
  }
  int guess(const GameEnv&, const PsiView<S>&, BytesView, const typename S::DSig&,
            PsiOracles<S>&, RandomSource& rng) override {
    uint8_t bit;
    rng.fill(std::span(&bit, 1));
    return bit & 1;
  }
};

template <class S>
class ConstantPsi : public PsiStrategy<S> {
 public:
  explicit ConstantPsi(int answer) : answer_(answer) {}
  Bytes find(const GameEnv&, const PsiView<S>&, PsiOracles<S>&,
             RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    return m;
  }
  int guess(const GameEnv&, const PsiView<S>&, BytesView, const typename S::DSig&,
            PsiOracles<S>&, RandomSource&) override {
    return answer_;
  }

 private:
  int answer_;
};

/// Distinguishes UDVS-BB challenges with the public verification equations:
/// exactly one candidate signer key satisfies them. Documents why UDVS-BB
/// does not claim signer privacy.
class BbPublicDistinguisher : public PsiStrategy<BbUdvs> {
 public:
  Bytes find(const GameEnv&, const PsiView<BbUdvs>&, PsiOracles<BbUdvs>&,
             RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    return m;
  }
  int guess(const GameEnv& env, const PsiView<BbUdvs>& view, BytesView m_star,
            const bb::DesignatedSig& challenge, PsiOracles<BbUdvs>&,
            RandomSource& rng) override {
    bool ok0 = bb::dverify_public(env.suite, env.h2s, view.pk0, view.pk_v, m_star,
                                  challenge)
                   .accepted;
    bool ok1 = bb::dverify_public(env.suite, env.h2s, view.pk1, view.pk_v, m_star,
                                  challenge)
                   .accepted;
    if (ok0 != ok1) return ok1 ? 1 : 0;
    uint8_t bit;
    rng.fill(std::span(&bit, 1));
    return bit & 1;
  }
};

/// The same public-equation attack pointed at UDVS-BLS. Without the
/// verifier secret there is no public acceptance test to evaluate, so the
/// best public surrogate <H, U_a> vs <Q1, Q2> carries no signal and the
/// advantage collapses to zero.
class BlsPublicAttempt : public PsiStrategy<BlsUdvs> {
 public:
  Bytes find(const GameEnv&, const PsiView<BlsUdvs>&, PsiOracles<BlsUdvs>&,
             RandomSource& rng) override {
    Bytes m(8);
    rng.fill(m);
    return m;
  }
  int guess(const GameEnv& env, const PsiView<BlsUdvs>& view, BytesView m_star,
            const bls::DesignatedSig& challenge, PsiOracles<BlsUdvs>&,
            RandomSource& rng) override {
    GroupElement h = env.h2g(m_star, challenge.salt);
    GroupElement product = env.suite.pair(challenge.q1, challenge.q2);
    bool ok0 = env.suite.pair(h, view.pk0.u2) == product;
    bool ok1 = env.suite.pair(h, view.pk1.u2) == product;
    if (ok0 != ok1) return ok1 ? 1 : 0;
    uint8_t bit;
    rng.fill(std::span(&bit, 1));
    return bit & 1;
  }
};

// ---------------------------------------------------------------------------
// Source hiding as an exact correspondence check

struct SourceHidingReport {
  uint64_t checked = 0;
  uint64_t mismatches = 0;
  bool exhaustive = false;
};

/// UDVS-BB: fake(r, t~) must equal designate(sign(r)) under the randomizer
/// t = t~ * (u_a + h(m) + v_a * r), tuple for tuple. When the whole
/// (r, t~) grid fits within `trials` the check is exhaustive; the probe
/// message is chosen with h(m) = -u_a so every grid row carries a
/// signature. `tamper_fake` is a test hook that corrupts fake outputs.
inline SourceHidingReport check_source_hiding_bb(
    const GameEnv& env, uint64_t trials, RandomSource& rng,
    const std::function<void(bb::DesignatedSig&)>& tamper_fake = nullptr) {
  const Suite& suite = env.suite;
  auto signer = bb::keygen(suite, rng);
  auto verifier = keygen_verifier(suite, rng);
  SourceHidingReport report;

  mpz_class grid = (suite.order() - 1) * (suite.order() - 1);
  report.exhaustive = grid <= trials;

  Bytes m;
  if (report.exhaustive) {
    // Find m with h(m) = -u_a: then u_a + h + v_a*r is nonzero on the grid.
    Scalar want = suite.sc_neg(signer.sk.u);
    for (uint64_t i = 0;; ++i) {
      m.clear();
      append_u64be(m, i);
      if (env.h2s(m) == want) break;
    }
  } else {
    m = to_bytes("source-hiding probe");
  }
  Scalar h = env.h2s(m);

  auto check_one = [&](const Scalar& r, const Scalar& tt) {
    Scalar w = suite.sc_add(suite.sc_add(signer.sk.u, h),
                            suite.sc_mul(signer.sk.v, r));
    if (w.value == 0) return;  // no signature exists for this r
    auto faked = bb::fake_with(suite, env.h2s, signer.pk, verifier.sk, m, r, tt);
    if (tamper_fake) tamper_fake(faked);
    auto sig = bb::sign_with_nonce(suite, env.h2s, signer.sk, m, r);
    auto designated = bb::designate_with_t(suite, env.h2s, signer.pk, verifier.pk,
                                           m, sig, suite.sc_mul(tt, w));
    ++report.checked;
    if (!(faked == designated)) ++report.mismatches;
  };

  if (report.exhaustive) {
    uint64_t qm1 = mpz_get_ui(mpz_class(suite.order() - 1).get_mpz_t());
    for (uint64_t r = 1; r <= qm1; ++r) {
      for (uint64_t tt = 1; tt <= qm1; ++tt) {
        check_one(suite.sc(r), suite.sc(tt));
      }
    }
  } else {
    for (uint64_t i = 0; i < trials; ++i) {
      check_one(suite.sample_scalar(rng, true), suite.sample_scalar(rng, true));
    }
  }
  return report;
}

/// UDVS-BLS: fake(salt, t) must equal designate(sign(salt)) under the map
/// t = (t' * u_a)^{-1}. Exhaustive over t' with cycling salts when the
/// order is small enough.
inline SourceHidingReport check_source_hiding_bls(
    const GameEnv& env, uint64_t trials, RandomSource& rng,
    const std::function<void(bls::DesignatedSig&)>& tamper_fake = nullptr) {
  const Suite& suite = env.suite;
  auto signer = bls::keygen(suite, rng);
  auto verifier = keygen_verifier(suite, rng);
  Bytes m = to_bytes("source-hiding probe");
  SourceHidingReport report;

  auto check_one = [&](const Salt& salt, const Scalar& tprime) {
    auto sig = bls::sign_with_salt(suite, env.h2g, signer.sk, m, salt);
    auto designated = bls::designate_with_t(suite, env.h2g, signer.pk,
                                            verifier.pk, m, sig, tprime);
    Scalar t = suite.sc_inv(suite.sc_mul(tprime, signer.sk.u));
    auto faked = bls::fake_with(suite, env.h2g, signer.pk, verifier.sk, m, salt, t);
    if (tamper_fake) tamper_fake(faked);
    ++report.checked;
    if (!(faked == designated)) ++report.mismatches;
  };

  report.exhaustive = suite.order() - 1 <= trials;
  if (report.exhaustive) {
    uint64_t qm1 = mpz_get_ui(mpz_class(suite.order() - 1).get_mpz_t());
    uint64_t salts = std::max<uint64_t>(1, trials / qm1);
    uint64_t salt_space = env.h2g.salt_bits() >= 63
                              ? UINT64_MAX
                              : (uint64_t(1) << env.h2g.salt_bits());
    salts = std::min(salts, salt_space);
    for (uint64_t sv = 0; sv < salts; ++sv) {
      Salt salt = salt_from_u64(env.h2g.salt_bits(), sv);
      for (uint64_t tp = 1; tp <= qm1; ++tp) check_one(salt, suite.sc(tp));
    }
  } else {
    for (uint64_t i = 0; i < trials; ++i) {
      check_one(sample_salt(env.h2g.salt_bits(), rng),
                suite.sample_scalar(rng, true));
    }
  }
  return report;
}

}  // namespace udvs::games
