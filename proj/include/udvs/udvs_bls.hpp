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

#include "udvs/udvs_bb.hpp"

namespace udvs {

namespace bls {

/// tau = (salt, Q1, Q2) with Q1 in G1, Q2 in G2. Accepted iff
/// <Q1, Q2> = <u_b * H(m, salt), U_a>; verification needs the verifier
/// secret, so the scheme is deliberately not publicly verifiable.
struct DesignatedSig {
  Salt salt;
  GroupElement q1;  // G1
  GroupElement q2;  // G2

  friend bool operator==(const DesignatedSig&, const DesignatedSig&) = default;
};

/// tau = (salt, Q0, Q_1..Q_n), one Q_i in G2 per verifier.
struct MultiDesignatedSig {
  Salt salt;
  GroupElement q0;                // G1
  std::vector<GroupElement> qs;   // G2, one per verifier

  friend bool operator==(const MultiDesignatedSig&, const MultiDesignatedSig&) = default;
};

struct DelegationElement {
  GroupElement d;  // u_a * u_b * P2 in G2

  friend bool operator==(const DelegationElement&, const DelegationElement&) = default;
};

/// Designation transform: (salt, t*S, t^{-1}*U_b). Pairing-free.
inline DesignatedSig designate_core(const Suite& suite, const VerifierPublic& pk_v,
                                    const Signature& sig, const Scalar& t) {
  if (t.value == 0 || !suite.sc_in_range(t)) {
    throw Error("designate: t must be in [1, q-1]");
  }
  return DesignatedSig{sig.salt, suite.mul(t, sig.s),
                       suite.mul(suite.sc_inv(t), pk_v.u2)};
}

inline DesignatedSig designate_with_t(const Suite& suite, const GroupHasher& h2g,
                                      const SignerPublic& pk_s,
                                      const VerifierPublic& pk_v, BytesView m,
                                      const Signature& sig, const Scalar& t) {
  if (!verify(suite, h2g, pk_s, m, sig)) {
    throw Error("designate: input signature does not verify");
  }
  return designate_core(suite, pk_v, sig, t);
}

inline DesignatedSig designate(const Suite& suite, const GroupHasher& h2g,
                               const SignerPublic& pk_s, const VerifierPublic& pk_v,
                               BytesView m, const Signature& sig,
                               RandomSource& rng) {
  return designate_with_t(suite, h2g, pk_s, pk_v, m, sig,
                          suite.sample_scalar(rng, /*nonzero=*/true));
}

inline VerifyResult dverify(const Suite& suite, const GroupHasher& h2g,
                            const SignerPublic& pk_s, const VerifierSecret& sk_v,
                            BytesView m, const DesignatedSig& tau) {
  if (tau.q1.group != Group::G1 || tau.q2.group != Group::G2 ||
      !suite.is_valid(tau.q1) || !suite.is_valid(tau.q2) ||
      tau.salt.bits != h2g.salt_bits() || !tau.salt.canonical()) {
    return VerifyResult::fail(Reject::malformed);
  }
  GroupElement h = h2g(m, tau.salt);
  GroupElement expected = suite.pair(suite.mul(sk_v.u, h), pk_s.u2);
  if (suite.pair(tau.q1, tau.q2) == expected) return VerifyResult::ok();
  return VerifyResult::fail(Reject::equation);
}

/// Simulator: (salt, t^{-1}*H(m, salt), t*u_b*U_a). For a fixed salt, the
/// output at t equals the honest designation at t' with t = (t'*u_a)^{-1}.
inline DesignatedSig fake_with(const Suite& suite, const GroupHasher& h2g,
                               const SignerPublic& pk_s, const VerifierSecret& sk_v,
                               BytesView m, const Salt& salt, const Scalar& t) {
  if (t.value == 0 || !suite.sc_in_range(t)) {
    throw Error("fake: t must be in [1, q-1]");
  }
  GroupElement h = h2g(m, salt);
  return DesignatedSig{salt, suite.mul(suite.sc_inv(t), h),
                       suite.mul(suite.sc_mul(t, sk_v.u), pk_s.u2)};
}

inline DesignatedSig fake(const Suite& suite, const GroupHasher& h2g,
                          const SignerPublic& pk_s, const VerifierSecret& sk_v,
                          BytesView m, RandomSource& rng) {
  Salt salt = sample_salt(h2g.salt_bits(), rng);
  Scalar t = suite.sample_scalar(rng, true);
  return fake_with(suite, h2g, pk_s, sk_v, m, salt, t);
}

// --- Delegation: D = u_a * u_b * P2, computable by either party.

inline DelegationElement make_delegation_signer(const Suite& suite,
                                                const SignerSecret& sk_s,
                                                const VerifierPublic& pk_v) {
  return DelegationElement{suite.mul(sk_s.u, pk_v.u2)};
}

inline DelegationElement make_delegation_verifier(const Suite& suite,
                                                  const VerifierSecret& sk_v,
                                                  const SignerPublic& pk_s) {
  return DelegationElement{suite.mul(sk_v.u, pk_s.u2)};
}

inline bool delegation_consistent(const Suite& suite, const DelegationElement& del,
                                  const SignerPublic& pk_s,
                                  const VerifierPublic& pk_v) {
  return del.d.group == Group::G2 && suite.is_valid(del.d) &&
         suite.pair(suite.gen1(), del.d) == suite.pair(pk_s.u1, pk_v.u2);
}

/// Fake driven by the delegation element; identical to fake_with as a
/// function of (salt, t).
inline DesignatedSig fake_with_delegation_with(const Suite& suite,
                                               const GroupHasher& h2g,
                                               const DelegationElement& del,
                                               const SignerPublic& pk_s,
                                               const VerifierPublic& pk_v,
                                               BytesView m, const Salt& salt,
                                               const Scalar& t) {
  if (!delegation_consistent(suite, del, pk_s, pk_v)) {
    throw Error("fake_with_delegation: element does not match the key pair");
  }
  if (t.value == 0 || !suite.sc_in_range(t)) {
    throw Error("fake_with_delegation: t must be in [1, q-1]");
  }
  GroupElement h = h2g(m, salt);
  return DesignatedSig{salt, suite.mul(suite.sc_inv(t), h), suite.mul(t, del.d)};
}

inline DesignatedSig fake_with_delegation(const Suite& suite, const GroupHasher& h2g,
                                          const DelegationElement& del,
                                          const SignerPublic& pk_s,
                                          const VerifierPublic& pk_v, BytesView m,
                                          RandomSource& rng) {
  Salt salt = sample_salt(h2g.salt_bits(), rng);
  Scalar t = suite.sample_scalar(rng, true);
  return fake_with_delegation_with(suite, h2g, del, pk_s, pk_v, m, salt, t);
}

// --- Re-randomization: (salt, s*Q1, s^{-1}*Q2) leaves <Q1, Q2> unchanged.

inline DesignatedSig rerandomize_with(const Suite& suite, const DesignatedSig& tau,
                                      const Scalar& s) {
  if (s.value == 0 || !suite.sc_in_range(s)) {
    throw Error("rerandomize: s must be in [1, q-1]");
  }
  return DesignatedSig{tau.salt, suite.mul(s, tau.q1),
                       suite.mul(suite.sc_inv(s), tau.q2)};
}

inline DesignatedSig rerandomize(const Suite& suite, const DesignatedSig& tau,
                                 RandomSource& rng) {
  return rerandomize_with(suite, tau, suite.sample_scalar(rng, true));
}

// --- Multi-verifier scheme UDVS-BLS(n): Q0 = t*S, Q_i = t^{-1}*U_{b_i}.

inline MultiDesignatedSig multi_designate_with_t(
    const Suite& suite, const GroupHasher& h2g, const SignerPublic& pk_s,
    const std::vector<AttestedVerifierPublic>& pks_v, BytesView m,
    const Signature& sig, const Scalar& t) {
  if (pks_v.empty()) throw Error("multi_designate: need at least one verifier");
  for (const auto& k : pks_v) {
    if (!verifier_public_consistent(suite, k.pk)) {
      throw Error("multi_designate: inconsistent dual-group verifier key");
    }
    if (!pop_verify(suite, k.pk, k.pop)) {
      throw Error("multi_designate: missing or invalid proof of possession");
    }
  }
  if (!verify(suite, h2g, pk_s, m, sig)) {
    throw Error("multi_designate: input signature does not verify");
  }
  if (t.value == 0 || !suite.sc_in_range(t)) {
    throw Error("multi_designate: t must be in [1, q-1]");
  }
  MultiDesignatedSig tau;
  tau.salt = sig.salt;
  tau.q0 = suite.mul(t, sig.s);
  Scalar tinv = suite.sc_inv(t);
  tau.qs.reserve(pks_v.size());
  for (const auto& k : pks_v) tau.qs.push_back(suite.mul(tinv, k.pk.u2));
  return tau;
}

inline MultiDesignatedSig multi_designate(const Suite& suite, const GroupHasher& h2g,
                                          const SignerPublic& pk_s,
                                          const std::vector<AttestedVerifierPublic>& pks_v,
                                          BytesView m, const Signature& sig,
                                          RandomSource& rng) {
  return multi_designate_with_t(suite, h2g, pk_s, pks_v, m, sig,
                                suite.sample_scalar(rng, true));
}

/// Verifier i first runs the n-1 cross-consistency checks
/// <psi(U_j), Q_i> = <psi(U_i), Q_j>, then its validity check
/// <Q0, Q_i> = <u_{b_i} * H(m, salt), U_a>. Rejects on the first failure.
inline VerifyResult multi_dverify(const Suite& suite, const GroupHasher& h2g,
                                  const SignerPublic& pk_s,
                                  const std::vector<VerifierPublic>& pks_v,
                                  size_t index, const VerifierSecret& sk_v,
                                  BytesView m, const MultiDesignatedSig& tau) {
  if (index >= pks_v.size()) throw Error("multi_dverify: index out of range");
  if (tau.qs.size() != pks_v.size() || tau.q0.group != Group::G1 ||
      !suite.is_valid(tau.q0) || tau.salt.bits != h2g.salt_bits() ||
      !tau.salt.canonical()) {
    return VerifyResult::fail(Reject::malformed);
  }
  for (const auto& q : tau.qs) {
    if (q.group != Group::G2 || !suite.is_valid(q)) {
      return VerifyResult::fail(Reject::malformed);
    }
  }
  if (!(suite.mul(sk_v.u, suite.gen2()) == pks_v[index].u2)) {
    return VerifyResult::fail(Reject::key_mismatch);
  }
  for (size_t j = 0; j < pks_v.size(); ++j) {
    if (j == index) continue;
    if (!(suite.pair(pks_v[j].u1, tau.qs[index]) ==
          suite.pair(pks_v[index].u1, tau.qs[j]))) {
      return VerifyResult::fail(Reject::cross_consistency);
    }
  }
  GroupElement h = h2g(m, tau.salt);
  GroupElement expected = suite.pair(suite.mul(sk_v.u, h), pk_s.u2);
  if (suite.pair(tau.q0, tau.qs[index]) == expected) return VerifyResult::ok();
  return VerifyResult::fail(Reject::equation);
}

}  // namespace bls

}  // namespace udvs
