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

#include <gmpxx.h>

#include <memory>
#include <string_view>

#include "udvs/bytes.hpp"
#include "udvs/rng.hpp"

namespace udvs {

enum class Group : uint8_t { G1 = 1, G2 = 2, G3 = 3 };

inline std::string_view group_name(Group g) {
  switch (g) {
    case Group::G1: return "G1";
    case Group::G2: return "G2";
    case Group::G3: return "G3";
  }
  return "?";
}

/// Element of one of the three groups. The payload meaning is owned by the
/// suite that produced it; callers never interpret it, they only hand it
/// back to suite operations or to encode().
struct GroupElement {
  Group group;
  mpz_class value;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Residue mod the suite order q, always in [0, q-1].
struct Scalar {
  mpz_class value;

  friend bool operator==(const Scalar&, const Scalar&) = default;
};

inline Bytes mpz_to_be(const mpz_class& v, size_t width) {
  Bytes out(width, 0);
  size_t count = 0;
  if (mpz_sgn(v.get_mpz_t()) != 0) {
    size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (need > width) throw Error("integer too large for fixed width");
    mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

inline mpz_class mpz_from_be(BytesView data) {
  mpz_class v;
  if (!data.empty()) {
    mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
  }
  return v;
}

/// Prime-order bilinear structure (q, G1, G2, G3, pair, psi) with fixed
/// generators P2 and P1 = psi(P2). Immutable after construction; all
/// operations are pure, so a suite is freely shared across threads.
///
/// Both shipped suites are arithmetic stand-ins used as exact correctness
/// oracles: they are *deliberately insecure* (group elements reveal their
/// discrete logarithms) and must never guard real data.
class Suite {
 public:
  virtual ~Suite() = default;

  virtual std::string_view id() const = 0;
  virtual unsigned security_bits() const = 0;
  virtual const mpz_class& order() const = 0;
  virtual const GroupElement& gen1() const = 0;
  virtual const GroupElement& gen2() const = 0;

  virtual GroupElement identity(Group g) const = 0;
  virtual bool is_valid(const GroupElement& e) const = 0;

  // G1/G2 are written additively.
  virtual GroupElement add(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement neg(const GroupElement& a) const = 0;
  virtual GroupElement mul(const Scalar& s, const GroupElement& a) const = 0;

  virtual GroupElement pair(const GroupElement& a, const GroupElement& b) const = 0;

  /// Type-2 settings compute psi on all of G2; Type-3-style backends do
  /// not, and callers fall back to dual-group public keys.
  virtual bool supports_psi() const = 0;
  virtual GroupElement psi(const GroupElement& b) const = 0;

  // G3 is written multiplicatively.
  virtual GroupElement gt_mul(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement gt_pow(const GroupElement& a, const Scalar& s) const = 0;

  virtual GroupElement sample(Group g, RandomSource& rng) const = 0;

  /// Deterministic map from a uniform scalar to G1, the suite half of the
  /// (message, salt) -> G1 hash.
  virtual GroupElement g1_from_hash(const Scalar& s) const = 0;

  virtual size_t encoded_size(Group g) const = 0;
  virtual Bytes encode(const GroupElement& e) const = 0;
  virtual GroupElement decode(Group g, BytesView data) const = 0;

  bool is_identity(const GroupElement& e) const { return e == identity(e.group); }

  // --- Scalar field helpers (derived from order(), shared by all suites).

  size_t scalar_size() const {
    return (mpz_sizeinbase(order().get_mpz_t(), 2) + 7) / 8;
  }

  Scalar sc(uint64_t v) const {
    return Scalar{mpz_class(static_cast<unsigned long>(v)) % order()};
  }

  Scalar sc_add(const Scalar& a, const Scalar& b) const {
    return Scalar{(a.value + b.value) % order()};
  }

  Scalar sc_sub(const Scalar& a, const Scalar& b) const {
    mpz_class r = (a.value - b.value) % order();
    if (r < 0) r += order();
    return Scalar{r};
  }

  Scalar sc_mul(const Scalar& a, const Scalar& b) const {
    return Scalar{(a.value * b.value) % order()};
  }

  Scalar sc_neg(const Scalar& a) const {
    if (a.value == 0) return a;
    return Scalar{order() - a.value};
  }

  /// Multiplicative inverse mod q; a = 0 is an error.
  Scalar sc_inv(const Scalar& a) const {
    if (a.value == 0) throw Error("scalar_inverse: zero has no inverse");
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), order().get_mpz_t()) == 0) {
      throw Error("scalar_inverse: not invertible");
    }
    return Scalar{r};
  }

  bool sc_in_range(const Scalar& a) const {
    return a.value >= 0 && a.value < order();
  }

  Bytes encode_scalar(const Scalar& s) const {
    return mpz_to_be(s.value, scalar_size());
  }

  Scalar decode_scalar(BytesView data) const {
    if (data.size() != scalar_size()) throw DecodeError("scalar: wrong length");
    mpz_class v = mpz_from_be(data);
    if (v >= order()) throw DecodeError("scalar: out of range");
    return Scalar{v};
  }

  /// Uniform scalar via rejection sampling of fixed-width byte strings;
  /// values are never reduced, only accepted or resampled, so there is no
  /// modulo bias. With nonzero set the range is [1, q-1].
  Scalar sample_scalar(RandomSource& rng, bool nonzero = false) const {
    const size_t width = scalar_size();
    const size_t bits = mpz_sizeinbase(order().get_mpz_t(), 2);
    const uint8_t top_mask =
        bits % 8 == 0 ? 0xff : static_cast<uint8_t>((1u << (bits % 8)) - 1);
    Bytes buf(width);
    for (;;) {
      rng.fill(buf);
      buf[0] &= top_mask;
      mpz_class v = mpz_from_be(buf);
      if (v >= order()) continue;
      if (nonzero && v == 0) continue;
      return Scalar{v};
    }
  }
};

/// Call counters for the instrumented wrapper.
struct SuiteCounters {
  uint64_t pair = 0;
  uint64_t mul = 0;
  uint64_t add = 0;
  uint64_t psi = 0;
  uint64_t gt_pow = 0;

  void reset() { *this = SuiteCounters{}; }
};

/// Transparent decorator counting group-operation calls; used by the
/// operation-cost audits. Forwards everything unchanged.
class CountingSuite final : public Suite {
 public:
  CountingSuite(const Suite& inner, SuiteCounters& counters)
      : inner_(inner), counters_(counters) {}

  std::string_view id() const override { return inner_.id(); }
  unsigned security_bits() const override { return inner_.security_bits(); }
  const mpz_class& order() const override { return inner_.order(); }
  const GroupElement& gen1() const override { return inner_.gen1(); }
  const GroupElement& gen2() const override { return inner_.gen2(); }
  GroupElement identity(Group g) const override { return inner_.identity(g); }
  bool is_valid(const GroupElement& e) const override { return inner_.is_valid(e); }

  GroupElement add(const GroupElement& a, const GroupElement& b) const override {
    ++counters_.add;
    return inner_.add(a, b);
  }
  GroupElement neg(const GroupElement& a) const override { return inner_.neg(a); }
  GroupElement mul(const Scalar& s, const GroupElement& a) const override {
    ++counters_.mul;
    return inner_.mul(s, a);
  }
  GroupElement pair(const GroupElement& a, const GroupElement& b) const override {
    ++counters_.pair;
    return inner_.pair(a, b);
  }
  bool supports_psi() const override { return inner_.supports_psi(); }
  GroupElement psi(const GroupElement& b) const override {
    ++counters_.psi;
    return inner_.psi(b);
  }
  GroupElement gt_mul(const GroupElement& a, const GroupElement& b) const override {
    return inner_.gt_mul(a, b);
  }
  GroupElement gt_pow(const GroupElement& a, const Scalar& s) const override {
    ++counters_.gt_pow;
    return inner_.gt_pow(a, s);
  }
  GroupElement sample(Group g, RandomSource& rng) const override {
    return inner_.sample(g, rng);
  }
  GroupElement g1_from_hash(const Scalar& s) const override {
    return inner_.g1_from_hash(s);
  }
  size_t encoded_size(Group g) const override { return inner_.encoded_size(g); }
  Bytes encode(const GroupElement& e) const override { return inner_.encode(e); }
  GroupElement decode(Group g, BytesView data) const override {
    return inner_.decode(g, data);
  }

 private:
  const Suite& inner_;
  SuiteCounters& counters_;
};

}  // namespace udvs
