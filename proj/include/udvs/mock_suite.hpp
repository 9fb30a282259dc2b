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

#include "udvs/suite.hpp"

namespace udvs {

namespace detail {

/// Common machinery for suites whose G1 and G2 are (Z_q, +) with elements
/// stored as their own exponents.
class ZqSuiteBase : public Suite {
 public:
  unsigned security_bits() const override { return k_; }
  const mpz_class& order() const override { return q_; }
  const GroupElement& gen1() const override { return p1_; }
  const GroupElement& gen2() const override { return p2_; }

  GroupElement add(const GroupElement& a, const GroupElement& b) const override {
    require_point_pair(a, b);
    return GroupElement{a.group, (a.value + b.value) % q_};
  }

  GroupElement neg(const GroupElement& a) const override {
    require_point(a);
    if (a.value == 0) return a;
    return GroupElement{a.group, q_ - a.value};
  }

  GroupElement mul(const Scalar& s, const GroupElement& a) const override {
    require_point(a);
    require_scalar(s);
    return GroupElement{a.group, (s.value * a.value) % q_};
  }

  GroupElement g1_from_hash(const Scalar& s) const override {
    require_scalar(s);
    return GroupElement{Group::G1, (s.value * p1_.value) % q_};
  }

  GroupElement sample(Group g, RandomSource& rng) const override {
    if (g == Group::G3) return sample_gt(rng);
    Scalar s = sample_scalar(rng);
    return GroupElement{g, s.value};
  }

  bool is_valid(const GroupElement& e) const override {
    if (e.group == Group::G3) return gt_is_valid(e.value);
    return e.value >= 0 && e.value < q_;
  }

  size_t encoded_size(Group g) const override {
    if (g == Group::G3) return gt_encoded_size();
    return scalar_size();
  }

  Bytes encode(const GroupElement& e) const override {
    if (!is_valid(e)) throw Error("encode: invalid element");
    return mpz_to_be(e.value, encoded_size(e.group));
  }

  GroupElement decode(Group g, BytesView data) const override {
    if (data.size() != encoded_size(g)) {
      throw DecodeError("element: wrong length");
    }
    GroupElement e{g, mpz_from_be(data)};
    if (!is_valid(e)) throw DecodeError("element: not in group");
    return e;
  }

 protected:
  void init_base(unsigned k, mpz_class q, mpz_class p2) {
    k_ = k;
    q_ = std::move(q);
    p2_ = GroupElement{Group::G2, std::move(p2)};
    p1_ = GroupElement{Group::G1, p2_.value};
  }

  void require_point(const GroupElement& a) const {
    if (a.group == Group::G3) throw Error("expected a G1/G2 element");
    if (!is_valid(a)) throw Error("element out of range for this suite");
  }

  void require_point_pair(const GroupElement& a, const GroupElement& b) const {
    require_point(a);
    require_point(b);
    if (a.group != b.group) throw Error("mismatched group tags");
  }

  void require_scalar(const Scalar& s) const {
    if (!sc_in_range(s)) throw Error("scalar out of range for this suite");
  }

  void require_gt(const GroupElement& a) const {
    if (a.group != Group::G3 || !is_valid(a)) throw Error("expected a G3 element");
  }

  virtual GroupElement sample_gt(RandomSource& rng) const = 0;
  virtual bool gt_is_valid(const mpz_class& v) const = 0;
  virtual size_t gt_encoded_size() const = 0;

  unsigned k_ = 0;
  mpz_class q_;
  GroupElement p1_{Group::G1, 0};
  GroupElement p2_{Group::G2, 0};
};

inline mpz_class sample_prime(unsigned bits, RandomSource& rng) {
  const size_t width = (bits + 7) / 8;
  const uint8_t top_mask =
      bits % 8 == 0 ? 0xff : static_cast<uint8_t>((1u << (bits % 8)) - 1);
  const uint8_t top_bit = bits % 8 == 0 ? 0x80 : uint8_t(1u << ((bits - 1) % 8));
  Bytes buf(width);
  for (;;) {
    rng.fill(buf);
    buf[0] = static_cast<uint8_t>((buf[0] & top_mask) | top_bit);
    mpz_class v = mpz_from_be(buf);
    if (mpz_probab_prime_p(v.get_mpz_t(), 40) != 0) return v;
  }
}

}  // namespace detail

/// Hand-checkable arithmetic suite: G1 = G2 = G3 = (Z_q, +) for a small
/// prime q, pair(a, b) = a*b mod q, psi = identity. G3 "exponentiation" is
/// scalar multiplication mod q. Exact oracle for desk-scale tests; offers
/// no security whatsoever.
class MockSuite final : public detail::ZqSuiteBase {
 public:
  static constexpr unsigned kMinBits = 4;
  static constexpr unsigned kMaxBits = 16;
  static constexpr std::string_view kId = "mock-v1";

  /// Direct construction with chosen parameters (documentation examples
  /// use q = 11, P2 = 1).
  MockSuite(const mpz_class& q, const mpz_class& p2_value) {
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) {
      throw Error("mock suite: q must be prime");
    }
    if (p2_value <= 0 || p2_value >= q) {
      throw Error("mock suite: P2 must be in [1, q-1]");
    }
    init_base(static_cast<unsigned>(mpz_sizeinbase(q.get_mpz_t(), 2)), q,
              p2_value);
  }

  static MockSuite generate(unsigned k, RandomSource& rng) {
    if (k < kMinBits || k > kMaxBits) {
      throw Error("mock suite: unsupported security parameter");
    }
    mpz_class q = detail::sample_prime(k, rng);
    // P2 uniform over G2 \ {identity}.
    mpz_class p2;
    {
      MockSuite probe(q, 1);
      p2 = probe.sample_scalar(rng, /*nonzero=*/true).value;
    }
    return MockSuite(q, p2);
  }

  std::string_view id() const override { return kId; }

  GroupElement pair(const GroupElement& a, const GroupElement& b) const override {
    if (a.group != Group::G1 || b.group != Group::G2) {
      throw Error("pair: arguments must be (G1, G2)");
    }
    require_point(a);
    require_point(b);
    return GroupElement{Group::G3, (a.value * b.value) % q_};
  }

  bool supports_psi() const override { return true; }

  GroupElement psi(const GroupElement& b) const override {
    if (b.group != Group::G2) throw Error("psi: argument must be in G2");
    require_point(b);
    return GroupElement{Group::G1, b.value};
  }

  GroupElement identity(Group g) const override { return GroupElement{g, 0}; }

  GroupElement gt_mul(const GroupElement& a, const GroupElement& b) const override {
    require_gt(a);
    require_gt(b);
    return GroupElement{Group::G3, (a.value + b.value) % q_};
  }

  GroupElement gt_pow(const GroupElement& a, const Scalar& s) const override {
    require_gt(a);
    require_scalar(s);
    return GroupElement{Group::G3, (s.value * a.value) % q_};
  }

 private:
  GroupElement sample_gt(RandomSource& rng) const override {
    return GroupElement{Group::G3, sample_scalar(rng).value};
  }
  bool gt_is_valid(const mpz_class& v) const override {
    return v >= 0 && v < q_;
  }
  size_t gt_encoded_size() const override { return scalar_size(); }
};

}  // namespace udvs
