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

#include "udvs/mock_suite.hpp"

namespace udvs {

/// Large-parameter backend: G1 = G2 = (Z_q, +) for a k-bit prime q, and G3
/// the order-q subgroup of Z_p^* for an auxiliary prime p = c*q + 1 with
/// fixed generator g. pair(a, b) = g^(a*b mod q) mod p.
///
/// The suite deliberately does not expose psi even though the underlying
/// representation would allow it: it mimics a Type-3 pairing backend, so the
/// rest of the toolkit has to run on dual-group public keys exactly as it
/// would on a production curve. Like the mock suite it is a correctness
/// oracle only - elements carry their exponents in the clear.
class ExpSuite final : public detail::ZqSuiteBase {
 public:
  static constexpr unsigned kMinBits = 16;
  static constexpr unsigned kMaxBits = 1024;
  static constexpr std::string_view kId = "exp-v1";

  ExpSuite(unsigned k, const mpz_class& q, const mpz_class& p,
           const mpz_class& g, const mpz_class& p2_value) {
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) {
      throw Error("exp suite: q must be prime");
    }
    if (mpz_sizeinbase(q.get_mpz_t(), 2) != k) {
      throw Error("exp suite: q does not have k bits");
    }
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) {
      throw Error("exp suite: p must be prime");
    }
    if ((p - 1) % q != 0) throw Error("exp suite: q must divide p-1");
    if (p2_value <= 0 || p2_value >= q) {
      throw Error("exp suite: P2 must be in [1, q-1]");
    }
    p_ = p;
    g_ = g;
    init_base(k, q, p2_value);
    if (!gt_is_valid(g) || g == 1) {
      throw Error("exp suite: g must generate the order-q subgroup");
    }
  }

  static ExpSuite generate(unsigned k, RandomSource& rng) {
    if (k < kMinBits || k > kMaxBits) {
      throw Error("exp suite: unsupported security parameter");
    }
    mpz_class q = detail::sample_prime(k, rng);

    // Smallest even cofactor c with p = c*q + 1 prime keeps p close to q.
    mpz_class p;
    mpz_class c = 2;
    for (;;) {
      p = c * q + 1;
      if (mpz_probab_prime_p(p.get_mpz_t(), 40) != 0) break;
      c += 2;
    }

    mpz_class g;
    {
      const size_t width = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
      Bytes buf(width);
      for (;;) {
        rng.fill(buf);
        mpz_class h = mpz_from_be(buf) % p;
        if (h <= 1) continue;
        mpz_powm(g.get_mpz_t(), h.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        if (g != 1) break;
      }
    }

    mpz_class p2;
    {
      ExpSuite probe(k, q, p, g, 1);
      p2 = probe.sample_scalar(rng, /*nonzero=*/true).value;
    }
    return ExpSuite(k, q, p, g, p2);
  }

  std::string_view id() const override { return kId; }

  const mpz_class& gt_modulus() const { return p_; }
  const mpz_class& gt_generator() const { return g_; }

  GroupElement pair(const GroupElement& a, const GroupElement& b) const override {
    if (a.group != Group::G1 || b.group != Group::G2) {
      throw Error("pair: arguments must be (G1, G2)");
    }
    require_point(a);
    require_point(b);
    mpz_class e = (a.value * b.value) % q_;
    mpz_class r;
    mpz_powm(r.get_mpz_t(), g_.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
    return GroupElement{Group::G3, r};
  }

  bool supports_psi() const override { return false; }

  GroupElement psi(const GroupElement&) const override {
    throw Error("exp suite: psi is not available; use dual-group keys");
  }

  GroupElement identity(Group g) const override {
    return GroupElement{g, g == Group::G3 ? 1 : 0};
  }

  GroupElement gt_mul(const GroupElement& a, const GroupElement& b) const override {
    require_gt(a);
    require_gt(b);
    return GroupElement{Group::G3, (a.value * b.value) % p_};
  }

  GroupElement gt_pow(const GroupElement& a, const Scalar& s) const override {
    require_gt(a);
    require_scalar(s);
    mpz_class r;
    mpz_powm(r.get_mpz_t(), a.value.get_mpz_t(), s.value.get_mpz_t(),
             p_.get_mpz_t());
    return GroupElement{Group::G3, r};
  }

 private:
  GroupElement sample_gt(RandomSource& rng) const override {
    Scalar s = sample_scalar(rng);
    mpz_class r;
    mpz_powm(r.get_mpz_t(), g_.get_mpz_t(), s.value.get_mpz_t(), p_.get_mpz_t());
    return GroupElement{Group::G3, r};
  }

  bool gt_is_valid(const mpz_class& v) const override {
    if (v < 1 || v >= p_) return false;
    mpz_class r;
    mpz_powm(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t(), p_.get_mpz_t());
    return r == 1;
  }

  size_t gt_encoded_size() const override {
    return (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8;
  }

  mpz_class p_;
  mpz_class g_;
};

enum class SuiteKind { mock, backend };

/// Setup: produces a suite satisfying the bilinear invariants, with P2
/// sampled uniformly from G2 \ {identity}.
inline std::unique_ptr<Suite> generate_params(unsigned k, SuiteKind kind,
                                              RandomSource& rng) {
  switch (kind) {
    case SuiteKind::mock:
      return std::make_unique<MockSuite>(MockSuite::generate(k, rng));
    case SuiteKind::backend:
      return std::make_unique<ExpSuite>(ExpSuite::generate(k, rng));
  }
  throw Error("unknown suite kind");
}

struct SelfTestReport {
  bool ok = true;
  std::string detail;
};

/// Spot-checks the suite invariants: bilinearity, non-degeneracy, the psi
/// homomorphism where psi exists, and canonical encode/decode round trips.
inline SelfTestReport suite_self_test(const Suite& suite, RandomSource& rng,
                                      int samples = 100) {
  auto fail = [](std::string msg) { return SelfTestReport{false, std::move(msg)}; };

  if (suite.is_identity(suite.pair(suite.gen1(), suite.gen2()))) {
    return fail("pair(P1, P2) is the G3 identity");
  }
  for (int i = 0; i < samples; ++i) {
    Scalar a = suite.sample_scalar(rng);
    Scalar b = suite.sample_scalar(rng);
    GroupElement q = suite.sample(Group::G1, rng);
    GroupElement r = suite.sample(Group::G2, rng);
    GroupElement lhs = suite.pair(suite.mul(a, q), suite.mul(b, r));
    GroupElement rhs = suite.gt_pow(suite.pair(q, r), suite.sc_mul(a, b));
    if (!(lhs == rhs)) return fail("bilinearity violated");
    if (suite.supports_psi()) {
      GroupElement h = suite.sample(Group::G2, rng);
      if (!(suite.psi(suite.mul(a, h)) == suite.mul(a, suite.psi(h)))) {
        return fail("psi homomorphism violated");
      }
    }
    for (Group g : {Group::G1, Group::G2, Group::G3}) {
      GroupElement e = suite.sample(g, rng);
      if (!(suite.decode(g, suite.encode(e)) == e)) {
        return fail("encode/decode round trip failed");
      }
    }
  }
  if (suite.supports_psi() && !(suite.psi(suite.gen2()) == suite.gen1())) {
    return fail("P1 != psi(P2)");
  }
  return SelfTestReport{};
}

}  // namespace udvs
