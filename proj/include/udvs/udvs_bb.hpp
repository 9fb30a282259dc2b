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

#include <vector>

#include "udvs/sig_base.hpp"

namespace udvs {

// ---------------------------------------------------------------------------
// Verifier keys (shared by UDVS-BB and UDVS-BLS)

struct VerifierSecret {
  Scalar u;  // u_b
};

/// U_b in G2 plus the G1 companion u_b*P1 = psi(U_b), published in dual-group
/// form so designation works on suites without psi.
struct VerifierPublic {
  GroupElement u2;  // G2
  GroupElement u1;  // G1

  friend bool operator==(const VerifierPublic&, const VerifierPublic&) = default;
};

struct VerifierKey {
  VerifierSecret sk;
  VerifierPublic pk;
};

inline VerifierKey verifier_key_from_secret(const Suite& suite, const Scalar& u) {
  if (u.value == 0 || !suite.sc_in_range(u)) {
    throw Error("verifier key: secret must be in [1, q-1]");
  }
  VerifierKey key;
  key.sk = {u};
  key.pk = {suite.mul(u, suite.gen2()), suite.mul(u, suite.gen1())};
  return key;
}

inline VerifierKey keygen_verifier(const Suite& suite, RandomSource& rng) {
  return verifier_key_from_secret(suite, suite.sample_scalar(rng, true));
}

/// The dual-group consistency check <u_b*P1, P2> = <P1, U_b>, enforced
/// whenever a verifier public key is loaded from the wire.
inline bool verifier_public_consistent(const Suite& suite, const VerifierPublic& pk) {
  return pk.u2.group == Group::G2 && pk.u1.group == Group::G1 &&
         suite.is_valid(pk.u2) && suite.is_valid(pk.u1) &&
         suite.pair(pk.u1, suite.gen2()) == suite.pair(suite.gen1(), pk.u2);
}

// ---------------------------------------------------------------------------
// Proof of possession (rogue-key guard for aggregation)

/// BLS-style self-signature on the encoded public key: S = u_b * H_pop(U_b).
struct ProofOfPossession {
  GroupElement s;  // G1

  friend bool operator==(const ProofOfPossession&, const ProofOfPossession&) = default;
};

namespace detail {
inline GroupElement pop_hash_point(const Suite& suite, const VerifierPublic& pk) {
  ScalarHasher h(suite, kPopTag);
  return suite.g1_from_hash(h(suite.encode(pk.u2)));
}
}  // namespace detail

inline ProofOfPossession pop_prove(const Suite& suite, const VerifierKey& key) {
  return ProofOfPossession{suite.mul(key.sk.u, detail::pop_hash_point(suite, key.pk))};
}

inline bool pop_verify(const Suite& suite, const VerifierPublic& pk,
                       const ProofOfPossession& pop) {
  if (pop.s.group != Group::G1 || !suite.is_valid(pop.s)) return false;
  GroupElement h = detail::pop_hash_point(suite, pk);
  return suite.pair(h, pk.u2) == suite.pair(pop.s, suite.gen2());
}

struct AttestedVerifierPublic {
  VerifierPublic pk;
  ProofOfPossession pop;
};

/// Key aggregation for the n-verifier variant: the aggregate public key is
/// the sum of the verifying public keys, which equals the key of the summed
/// secret. Every input must carry a valid proof of possession.
inline VerifierPublic aggregate_verifier_keys(
    const Suite& suite, const std::vector<AttestedVerifierPublic>& keys) {
  if (keys.empty()) throw Error("aggregate: need at least one verifier key");
  for (const auto& k : keys) {
    if (!verifier_public_consistent(suite, k.pk)) {
      throw Error("aggregate: inconsistent dual-group verifier key");
    }
    if (!pop_verify(suite, k.pk, k.pop)) {
      throw Error("aggregate: missing or invalid proof of possession");
    }
  }
  VerifierPublic agg = keys[0].pk;
  for (size_t i = 1; i < keys.size(); ++i) {
    agg.u2 = suite.add(agg.u2, keys[i].pk.u2);
    agg.u1 = suite.add(agg.u1, keys[i].pk.u1);
  }
  return agg;
}

// ---------------------------------------------------------------------------
// UDVS-BB

namespace bb {

/// tau = (r, Q1, Q2, Q3), all three group elements in G1. Accepted iff
///   <Q1, U_a + h(m)*P2 + r*V_a> = <Q3, P2>   (the base-scheme slot)
///   <Q3, U_b> = <Q2, P2>                     (the designation slot)
struct DesignatedSig {
  Scalar r;
  GroupElement q1, q2, q3;  // G1

  friend bool operator==(const DesignatedSig&, const DesignatedSig&) = default;
};

struct DelegationToken {
  GroupElement k1;  // u_a * u_b * P1
  GroupElement k2;  // v_a * u_b * P1

  friend bool operator==(const DelegationToken&, const DelegationToken&) = default;
};

/// The designation transform itself: Q1 = t*S, Q2 = t*psi(U_b), Q3 = t*P1.
/// Pairing-free (three scalar multiplications). Assumes the input signature
/// is valid; the checked wrappers below enforce that.
inline DesignatedSig designate_core(const Suite& suite, const VerifierPublic& pk_v,
                                    const Signature& sig, const Scalar& t) {
  if (t.value == 0 || !suite.sc_in_range(t)) {
    throw Error("designate: t must be in [1, q-1]");
  }
  return DesignatedSig{sig.r, suite.mul(t, sig.s), suite.mul(t, pk_v.u1),
                       suite.mul(t, suite.gen1())};
}

inline DesignatedSig designate_with_t(const Suite& suite, const ScalarHasher& h2s,
                                      const SignerPublic& pk_s,
                                      const VerifierPublic& pk_v, BytesView m,
                                      const Signature& sig, const Scalar& t) {
  if (!verify(suite, h2s, pk_s, m, sig)) {
    throw Error("designate: input signature does not verify");
  }
  return designate_core(suite, pk_v, sig, t);
}

inline DesignatedSig designate(const Suite& suite, const ScalarHasher& h2s,
                               const SignerPublic& pk_s, const VerifierPublic& pk_v,
                               BytesView m, const Signature& sig,
                               RandomSource& rng) {
  return designate_with_t(suite, h2s, pk_s, pk_v, m, sig,
                          suite.sample_scalar(rng, /*nonzero=*/true));
}

inline bool tuple_malformed(const Suite& suite, const DesignatedSig& tau) {
  return tau.q1.group != Group::G1 || tau.q2.group != Group::G1 ||
         tau.q3.group != Group::G1 || !suite.is_valid(tau.q1) ||
         !suite.is_valid(tau.q2) || !suite.is_valid(tau.q3) ||
         !suite.sc_in_range(tau.r);
}

/// Public verification, four pairing evaluations. Needs only the verifying
/// public key, so anyone can run it (UDVS-BB is publicly verifiable).
inline VerifyResult dverify_public(const Suite& suite, const ScalarHasher& h2s,
                                   const SignerPublic& pk_s,
                                   const VerifierPublic& pk_v, BytesView m,
                                   const DesignatedSig& tau) {
  if (tuple_malformed(suite, tau)) return VerifyResult::fail(Reject::malformed);
  Scalar h = h2s(m);
  GroupElement slot = suite.add(suite.add(pk_s.u2, suite.mul(h, suite.gen2())),
                                suite.mul(tau.r, pk_s.v2));
  GroupElement alpha1 = suite.pair(tau.q1, slot);
  GroupElement alpha2 = suite.pair(tau.q3, suite.gen2());
  GroupElement beta1 = suite.pair(tau.q3, pk_v.u2);
  GroupElement beta2 = suite.pair(tau.q2, suite.gen2());
  if (alpha1 == alpha2 && beta1 == beta2) return VerifyResult::ok();
  return VerifyResult::fail(Reject::equation);
}

/// Fast path for the designated verifier: checks Q2 = u_b*Q3 instead of the
/// second pairing equation, two pairings plus one scalar multiplication.
/// Agrees with dverify_public on every input.
inline VerifyResult dverify_fast(const Suite& suite, const ScalarHasher& h2s,
                                 const SignerPublic& pk_s,
                                 const VerifierSecret& sk_v, BytesView m,
                                 const DesignatedSig& tau) {
  if (tuple_malformed(suite, tau)) return VerifyResult::fail(Reject::malformed);
  Scalar h = h2s(m);
  GroupElement slot = suite.add(suite.add(pk_s.u2, suite.mul(h, suite.gen2())),
                                suite.mul(tau.r, pk_s.v2));
  GroupElement alpha1 = suite.pair(tau.q1, slot);
  GroupElement alpha2 = suite.pair(tau.q3, suite.gen2());
  if (alpha1 == alpha2 && suite.mul(sk_v.u, tau.q3) == tau.q2) {
    return VerifyResult::ok();
  }
  return VerifyResult::fail(Reject::equation);
}

enum class DVerifyMode { public_check, fast };

inline VerifyResult dverify(const Suite& suite, const ScalarHasher& h2s,
                            const SignerPublic& pk_s, const VerifierKey& vk,
                            BytesView m, const DesignatedSig& tau,
                            DVerifyMode mode) {
  return mode == DVerifyMode::fast
             ? dverify_fast(suite, h2s, pk_s, vk.sk, m, tau)
             : dverify_public(suite, h2s, pk_s, vk.pk, m, tau);
}

/// The verifier's simulator. With R = t*(psi(U_a) + h(m)*P1 + r*psi(V_a)) it
/// outputs (r, t*P1, u_b*R, R); the tuple verifies and, for fixed (r, t), it
/// equals the honest designation of the r-signature under randomizer
/// t*(u_a + h(m) + v_a*r). That exact correspondence is source hiding.
inline DesignatedSig fake_with(const Suite& suite, const ScalarHasher& h2s,
                               const SignerPublic& pk_s, const VerifierSecret& sk_v,
                               BytesView m, const Scalar& r, const Scalar& t) {
  if (r.value == 0 || t.value == 0 || !suite.sc_in_range(r) ||
      !suite.sc_in_range(t)) {
    throw Error("fake: randomizers must be in [1, q-1]");
  }
  Scalar h = h2s(m);
  GroupElement base = suite.add(suite.add(pk_s.u1, suite.mul(h, suite.gen1())),
                                suite.mul(r, pk_s.v1));
  GroupElement big_r = suite.mul(t, base);
  return DesignatedSig{r, suite.mul(t, suite.gen1()), suite.mul(sk_v.u, big_r),
                       big_r};
}

inline DesignatedSig fake(const Suite& suite, const ScalarHasher& h2s,
                          const SignerPublic& pk_s, const VerifierSecret& sk_v,
                          BytesView m, RandomSource& rng) {
  Scalar r = suite.sample_scalar(rng, true);
  Scalar t = suite.sample_scalar(rng, true);
  return fake_with(suite, h2s, pk_s, sk_v, m, r, t);
}

// --- Delegation: (K1, K2) = (u_a*u_b*P1, v_a*u_b*P1). Either party can
// compute the token from its own secret and the other's public key.

inline DelegationToken make_token_signer(const Suite& suite, const SignerSecret& sk_s,
                                         const VerifierPublic& pk_v) {
  return DelegationToken{suite.mul(sk_s.u, pk_v.u1), suite.mul(sk_s.v, pk_v.u1)};
}

inline DelegationToken make_token_verifier(const Suite& suite,
                                           const VerifierSecret& sk_v,
                                           const SignerPublic& pk_s) {
  return DelegationToken{suite.mul(sk_v.u, pk_s.u1), suite.mul(sk_v.u, pk_s.v1)};
}

inline bool token_consistent(const Suite& suite, const DelegationToken& token,
                             const SignerPublic& pk_s, const VerifierPublic& pk_v) {
  return token.k1.group == Group::G1 && token.k2.group == Group::G1 &&
         suite.is_valid(token.k1) && suite.is_valid(token.k2) &&
         suite.pair(token.k1, suite.gen2()) == suite.pair(pk_v.u1, pk_s.u2) &&
         suite.pair(token.k2, suite.gen2()) == suite.pair(pk_v.u1, pk_s.v2);
}

/// Fake driven by the published token instead of the verifier secret;
/// identical to fake_with as a function of (r, t).
inline DesignatedSig fake_with_token_with(const Suite& suite, const ScalarHasher& h2s,
                                          const DelegationToken& token,
                                          const SignerPublic& pk_s,
                                          const VerifierPublic& pk_v, BytesView m,
                                          const Scalar& r, const Scalar& t) {
  if (!token_consistent(suite, token, pk_s, pk_v)) {
    throw Error("fake_with_token: token does not match the key pair");
  }
  if (r.value == 0 || t.value == 0 || !suite.sc_in_range(r) ||
      !suite.sc_in_range(t)) {
    throw Error("fake_with_token: randomizers must be in [1, q-1]");
  }
  Scalar h = h2s(m);
  Scalar th = suite.sc_mul(t, h);
  Scalar tr = suite.sc_mul(t, r);
  GroupElement q2 = suite.add(suite.add(suite.mul(t, token.k1),
                                        suite.mul(th, pk_v.u1)),
                              suite.mul(tr, token.k2));
  GroupElement q3 = suite.add(suite.add(suite.mul(t, pk_s.u1),
                                        suite.mul(th, suite.gen1())),
                              suite.mul(tr, pk_s.v1));
  return DesignatedSig{r, suite.mul(t, suite.gen1()), q2, q3};
}

inline DesignatedSig fake_with_token(const Suite& suite, const ScalarHasher& h2s,
                                     const DelegationToken& token,
                                     const SignerPublic& pk_s,
                                     const VerifierPublic& pk_v, BytesView m,
                                     RandomSource& rng) {
  Scalar r = suite.sample_scalar(rng, true);
  Scalar t = suite.sample_scalar(rng, true);
  return fake_with_token_with(suite, h2s, token, pk_s, pk_v, m, r, t);
}

// --- Re-randomization: scales (Q1, Q2, Q3) by s, preserving acceptance.

inline DesignatedSig rerandomize_with(const Suite& suite, const DesignatedSig& tau,
                                      const Scalar& s) {
  if (s.value == 0 || !suite.sc_in_range(s)) {
    throw Error("rerandomize: s must be in [1, q-1]");
  }
  return DesignatedSig{tau.r, suite.mul(s, tau.q1), suite.mul(s, tau.q2),
                       suite.mul(s, tau.q3)};
}

inline DesignatedSig rerandomize(const Suite& suite, const DesignatedSig& tau,
                                 RandomSource& rng) {
  return rerandomize_with(suite, tau, suite.sample_scalar(rng, true));
}

}  // namespace bb

}  // namespace udvs
