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

#include <algorithm>

#include "udvs/suite.hpp"

namespace udvs {

inline constexpr std::string_view kHashToScalarTag = "UDVS:h2s:v1";
inline constexpr std::string_view kHashToGroupTag = "UDVS:h2g:v1";
inline constexpr std::string_view kPopTag = "UDVS:pop:v1";

/// Salt bit string of a fixed bit length; stored big-endian with the unused
/// high bits of the first byte zero (the canonical form).
struct Salt {
  Bytes bytes;
  uint32_t bits = 0;

  friend bool operator==(const Salt&, const Salt&) = default;

  static size_t byte_length(uint32_t bits) { return (bits + 7) / 8; }

  bool canonical() const {
    if (bytes.size() != byte_length(bits)) return false;
    if (bits % 8 != 0 && !bytes.empty()) {
      // high bits beyond `bits` must be clear
      uint8_t mask = static_cast<uint8_t>(~((1u << (bits % 8)) - 1));
      if ((bytes[0] & mask) != 0) return false;
    }
    return true;
  }
};

inline Salt sample_salt(uint32_t bits, RandomSource& rng) {
  Salt s;
  s.bits = bits;
  s.bytes.resize(Salt::byte_length(bits));
  rng.fill(s.bytes);
  if (bits % 8 != 0 && !s.bytes.empty()) {
    s.bytes[0] &= static_cast<uint8_t>((1u << (bits % 8)) - 1);
  }
  return s;
}

/// Salt whose value is the low bits of `v`; handy for exhaustive sweeps.
inline Salt salt_from_u64(uint32_t bits, uint64_t v) {
  Salt s;
  s.bits = bits;
  s.bytes.resize(Salt::byte_length(bits));
  for (size_t i = 0; i < s.bytes.size(); ++i) {
    s.bytes[s.bytes.size() - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
  }
  if (bits % 8 != 0 && !s.bytes.empty()) {
    s.bytes[0] &= static_cast<uint8_t>((1u << (bits % 8)) - 1);
  }
  return s;
}

namespace detail {

/// Expands (tag, data) into `width` bytes with counter-mode SHA-256.
inline Bytes hash_expand(std::string_view tag, BytesView data, size_t width) {
  Bytes out;
  out.reserve(width);
  uint32_t counter = 0;
  while (out.size() < width) {
    Bytes block = to_bytes(tag);
    block.push_back(0x00);
    append_u32be(block, counter++);
    append_u64be(block, data.size());
    append(block, data);
    auto digest = sha256(block);
    size_t take = std::min(width - out.size(), digest.size());
    out.insert(out.end(), digest.begin(), digest.begin() + take);
  }
  return out;
}

/// Big-endian integer from 128 extra bits of hash output, reduced mod q.
/// The widening makes the reduction bias negligible.
inline Scalar hash_to_range(const Suite& suite, std::string_view tag,
                            BytesView data) {
  const size_t qbits = mpz_sizeinbase(suite.order().get_mpz_t(), 2);
  const size_t width = (qbits + 128 + 7) / 8;
  Bytes wide = hash_expand(tag, data, width);
  return Scalar{mpz_from_be(wide) % suite.order()};
}

}  // namespace detail

/// The hash family mapping bit strings to scalars in [0, q-1].
class ScalarHasher {
 public:
  explicit ScalarHasher(const Suite& suite, std::string_view tag = kHashToScalarTag)
      : suite_(&suite), tag_(tag) {}

  const std::string& tag() const { return tag_; }

  Scalar operator()(BytesView m) const {
    return detail::hash_to_range(*suite_, tag_, m);
  }

  Scalar operator()(std::string_view m) const {
    return (*this)(BytesView(reinterpret_cast<const uint8_t*>(m.data()), m.size()));
  }

 private:
  const Suite* suite_;
  std::string tag_;
};

/// The random-oracle-style hash mapping (message, salt) to G1. On these
/// suites the construction is hash-to-scalar followed by the suite map
/// s -> s*P1, which leaks the discrete log of the output; acceptable
/// because the suites are correctness oracles, never security artifacts.
class GroupHasher {
 public:
  GroupHasher(const Suite& suite, uint32_t salt_bits,
              std::string_view tag = kHashToGroupTag)
      : suite_(&suite), salt_bits_(salt_bits), tag_(tag) {}

  uint32_t salt_bits() const { return salt_bits_; }
  const std::string& tag() const { return tag_; }

  GroupElement operator()(BytesView m, const Salt& salt) const {
    if (salt.bits != salt_bits_ || !salt.canonical()) {
      throw Error("hash_to_g1: salt must be exactly the configured bit length");
    }
    Bytes data;
    append_u64be(data, m.size());
    append(data, m);
    append(data, salt.bytes);
    return suite_->g1_from_hash(detail::hash_to_range(*suite_, tag_, data));
  }

  GroupElement operator()(std::string_view m, const Salt& salt) const {
    return (*this)(BytesView(reinterpret_cast<const uint8_t*>(m.data()), m.size()),
                   salt);
  }

 private:
  const Suite* suite_;
  uint32_t salt_bits_;
  std::string tag_;
};

/// Default salt length: f_r(k) = min(k, 32) bits.
inline uint32_t default_salt_bits(unsigned k) { return std::min(k, 32u); }

}  // namespace udvs
