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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "udvs/bytes.hpp"

namespace udvs {

/// Caller-owned randomness. Every randomized operation takes one of these
/// explicitly; nothing in the toolkit reaches for ambient entropy.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  uint64_t next_u64() {
    uint8_t buf[8];
    fill(buf);
    uint64_t v = 0;
    for (uint8_t b : buf) v = (v << 8) | b;
    return v;
  }
};

/// Deterministic byte stream: block_i = SHA-256(seed material || i).
/// Used for --seed runs, game tapes and reproducible tests.
class Drbg : public RandomSource {
 public:
  Drbg(uint64_t seed, std::string_view domain = "") {
    key_ = to_bytes("udvs-drbg-v1");
    key_.push_back(0x00);
    append_u64be(key_, seed);
    key_.push_back(0x00);
    append(key_, to_bytes(domain));
  }

  Drbg(BytesView seed, std::string_view domain = "") {
    key_ = to_bytes("udvs-drbg-v1");
    key_.push_back(0x01);
    append_u64be(key_, seed.size());
    append(key_, seed);
    key_.push_back(0x00);
    append(key_, to_bytes(domain));
  }

  void fill(std::span<uint8_t> out) override {
    size_t pos = 0;
    while (pos < out.size()) {
      if (buf_used_ == buf_.size()) refill();
      size_t take = std::min(out.size() - pos, buf_.size() - buf_used_);
      std::copy_n(buf_.begin() + buf_used_, take, out.begin() + pos);
      buf_used_ += take;
      pos += take;
    }
  }

  /// Derives an independent child stream; parent and child never overlap.
  Drbg child(std::string_view domain) {
    Bytes seed = key_;
    append_u64be(seed, counter_++);
    return Drbg(BytesView(seed), domain);
  }

 private:
  void refill() {
    Bytes block = key_;
    append_u64be(block, counter_++);
    buf_ = sha256(block);
    buf_used_ = 0;
  }

  Bytes key_;
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> buf_{};
  size_t buf_used_ = buf_.size();
};

/// OS entropy, for CLI runs without --seed.
class SystemRandom : public RandomSource {
 public:
  void fill(std::span<uint8_t> out) override {
    std::random_device rd;
    for (auto& b : out) b = static_cast<uint8_t>(rd());
  }
};

}  // namespace udvs
