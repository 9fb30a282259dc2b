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

#include "udvs/hashing.hpp"

namespace udvs {

enum class Reject {
  none,
  malformed,          // wrong tags, out-of-range values, bad salt
  equation,           // a pairing equation failed
  cross_consistency,  // multi-verifier cross check failed
  key_mismatch,       // supplied secret does not match the public key
};

/// Accept/reject bit plus a diagnostic tag. Only the bit is the contract;
/// the tag feeds the game harness and CLI error taxonomy.
struct VerifyResult {
  bool accepted = false;
  Reject reason = Reject::none;

  explicit operator bool() const { return accepted; }

  static VerifyResult ok() { return {true, Reject::none}; }
  static VerifyResult fail(Reject r) { return {false, r}; }
};

inline std::string_view reject_name(Reject r) {
  switch (r) {
    case Reject::none: return "none";
    case Reject::malformed: return "malformed";
    case Reject::equation: return "equation-failed";
    case Reject::cross_consistency: return "cross-consistency-failed";
    case Reject::key_mismatch: return "key-mismatch";
  }
  return "?";
}

namespace bb {

struct SignerSecret {
  Scalar u;  // u_a
  Scalar v;  // v_a
};

/// (U_a, V_a) in G2 plus their G1 companions u_a*P1, v_a*P1. The companions
/// equal psi(U_a), psi(V_a); carrying them keeps every algorithm runnable on
/// suites without psi (they are checked against the G2 halves on load).
struct SignerPublic {
  GroupElement u2, v2;  // G2
  GroupElement u1, v1;  // G1

  friend bool operator==(const SignerPublic&, const SignerPublic&) = default;
};

struct SignerKey {
  SignerSecret sk;
  SignerPublic pk;
};

struct Signature {
  Scalar r;
  GroupElement s;  // G1

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline SignerKey key_from_secret(const Suite& suite, const Scalar& u,
                                 const Scalar& v) {
  if (u.value == 0 || v.value == 0 || !suite.sc_in_range(u) ||
      !suite.sc_in_range(v)) {
    throw Error("bb key: secrets must be in [1, q-1]");
  }
  SignerKey key;
  key.sk = {u, v};
  key.pk = {suite.mul(u, suite.gen2()), suite.mul(v, suite.gen2()),
            suite.mul(u, suite.gen1()), suite.mul(v, suite.gen1())};
  return key;
}

inline SignerKey keygen(const Suite& suite, RandomSource& rng) {
  Scalar u = suite.sample_scalar(rng, /*nonzero=*/true);
  Scalar v = suite.sample_scalar(rng, /*nonzero=*/true);
  return key_from_secret(suite, u, v);
}

inline bool signer_public_consistent(const Suite& suite, const SignerPublic& pk) {
  return pk.u2.group == Group::G2 && pk.v2.group == Group::G2 &&
         pk.u1.group == Group::G1 && pk.v1.group == Group::G1 &&
         suite.is_valid(pk.u2) && suite.is_valid(pk.v2) &&
         suite.is_valid(pk.u1) && suite.is_valid(pk.v1) &&
         suite.pair(pk.u1, suite.gen2()) == suite.pair(suite.gen1(), pk.u2) &&
         suite.pair(pk.v1, suite.gen2()) == suite.pair(suite.gen1(), pk.v2);
}

namespace detail {

/// Sign with the message already reduced to h = hh(m). The public API always
/// hashes; the game harness uses this entry to steer h directly.
inline Signature sign_prehashed(const Suite& suite, const SignerSecret& sk,
                                const Scalar& h, RandomSource& rng) {
  // The loop body almost always runs once; the cap makes the degenerate
  // case observable instead of spinning.
  for (int attempt = 0; attempt < 128; ++attempt) {
    Scalar r = suite.sample_scalar(rng, /*nonzero=*/true);
    Scalar w = suite.sc_add(suite.sc_add(sk.u, h), suite.sc_mul(sk.v, r));
    if (w.value == 0) continue;
    return Signature{r, suite.mul(suite.sc_inv(w), suite.gen1())};
  }
  throw Error("bb sign: retry cap exceeded");
}

inline Signature sign_prehashed_with_nonce(const Suite& suite,
                                           const SignerSecret& sk,
                                           const Scalar& h, const Scalar& r) {
  if (r.value == 0 || !suite.sc_in_range(r)) {
    throw Error("bb sign: nonce must be in [1, q-1]");
  }
  Scalar w = suite.sc_add(suite.sc_add(sk.u, h), suite.sc_mul(sk.v, r));
  if (w.value == 0) throw Error("bb sign: nonce makes u_a + h + v_a*r = 0");
  return Signature{r, suite.mul(suite.sc_inv(w), suite.gen1())};
}

}  // namespace detail

inline Signature sign(const Suite& suite, const ScalarHasher& h2s,
                      const SignerSecret& sk, BytesView m, RandomSource& rng) {
  return detail::sign_prehashed(suite, sk, h2s(m), rng);
}

inline Signature sign_with_nonce(const Suite& suite, const ScalarHasher& h2s,
                                 const SignerSecret& sk, BytesView m,
                                 const Scalar& r) {
  return detail::sign_prehashed_with_nonce(suite, sk, h2s(m), r);
}

/// Accept iff <S, U_a + h(m)*P2 + r*V_a> = <P1, P2>.
inline VerifyResult verify(const Suite& suite, const ScalarHasher& h2s,
                           const SignerPublic& pk, BytesView m,
                           const Signature& sig) {
  if (sig.s.group != Group::G1 || !suite.is_valid(sig.s) ||
      !suite.sc_in_range(sig.r)) {
    return VerifyResult::fail(Reject::malformed);
  }
  Scalar h = h2s(m);
  GroupElement slot = suite.add(suite.add(pk.u2, suite.mul(h, suite.gen2())),
                                suite.mul(sig.r, pk.v2));
  GroupElement alpha = suite.pair(sig.s, slot);
  if (alpha == suite.pair(suite.gen1(), suite.gen2())) return VerifyResult::ok();
  return VerifyResult::fail(Reject::equation);
}

}  // namespace bb

namespace bls {

struct SignerSecret {
  Scalar u;  // u_a
};

struct SignerPublic {
  GroupElement u2;  // U_a in G2
  GroupElement u1;  // u_a*P1, the psi companion

  friend bool operator==(const SignerPublic&, const SignerPublic&) = default;
};

struct SignerKey {
  SignerSecret sk;
  SignerPublic pk;
};

struct Signature {
  Salt salt;
  GroupElement s;  // G1

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline SignerKey key_from_secret(const Suite& suite, const Scalar& u) {
  if (u.value == 0 || !suite.sc_in_range(u)) {
    throw Error("bls key: secret must be in [1, q-1]");
  }
  SignerKey key;
  key.sk = {u};
  key.pk = {suite.mul(u, suite.gen2()), suite.mul(u, suite.gen1())};
  return key;
}

inline SignerKey keygen(const Suite& suite, RandomSource& rng) {
  return key_from_secret(suite, suite.sample_scalar(rng, /*nonzero=*/true));
}

inline bool signer_public_consistent(const Suite& suite, const SignerPublic& pk) {
  return pk.u2.group == Group::G2 && pk.u1.group == Group::G1 &&
         suite.is_valid(pk.u2) && suite.is_valid(pk.u1) &&
         suite.pair(pk.u1, suite.gen2()) == suite.pair(suite.gen1(), pk.u2);
}

inline Signature sign_with_salt(const Suite& suite, const GroupHasher& h2g,
                                const SignerSecret& sk, BytesView m,
                                const Salt& salt) {
  return Signature{salt, suite.mul(sk.u, h2g(m, salt))};
}

inline Signature sign(const Suite& suite, const GroupHasher& h2g,
                      const SignerSecret& sk, BytesView m, RandomSource& rng) {
  return sign_with_salt(suite, h2g, sk, m, sample_salt(h2g.salt_bits(), rng));
}

/// Accept iff <H(m, salt), U_a> = <S, P2>.
inline VerifyResult verify(const Suite& suite, const GroupHasher& h2g,
                           const SignerPublic& pk, BytesView m,
                           const Signature& sig) {
  if (sig.s.group != Group::G1 || !suite.is_valid(sig.s) ||
      sig.salt.bits != h2g.salt_bits() || !sig.salt.canonical()) {
    return VerifyResult::fail(Reject::malformed);
  }
  GroupElement h = h2g(m, sig.salt);
  if (suite.pair(h, pk.u2) == suite.pair(sig.s, suite.gen2())) {
    return VerifyResult::ok();
  }
  return VerifyResult::fail(Reject::equation);
}

}  // namespace bls

}  // namespace udvs
