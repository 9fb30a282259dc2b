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

#include <optional>
#include <vector>

#include "udvs/suite.hpp"

// Desk-scale instance generators and solution checkers for the algorithmic
// problems the schemes reduce to. Instances keep their generating scalars as
// a hidden witness for harness-side checking; the PR1 relation is the one
// whose checker is purely public (two pairing equations), so PR1 instances
// remain checkable after the witness is erased.

namespace udvs::problems {

// --- ell-SDH: given (x*P2, ..., x^ell*P2), produce ((x+m)^{-1}*P1, m).

struct SdhInstance {
  std::vector<GroupElement> powers;  // x*P2, x^2*P2, ..., x^ell*P2
  std::optional<Scalar> x;           // witness

  void erase_witness() { x.reset(); }
};

struct SdhSolution {
  GroupElement s;  // G1
  Scalar m;
};

inline SdhInstance gen_sdh_with(const Suite& suite, unsigned ell, const Scalar& x) {
  if (ell < 1) throw Error("sdh: ell must be >= 1");
  SdhInstance inst;
  inst.x = x;
  Scalar acc = x;
  for (unsigned i = 0; i < ell; ++i) {
    inst.powers.push_back(suite.mul(acc, suite.gen2()));
    acc = suite.sc_mul(acc, x);
  }
  return inst;
}

inline SdhInstance gen_sdh(const Suite& suite, unsigned ell, RandomSource& rng) {
  return gen_sdh_with(suite, ell, suite.sample_scalar(rng, /*nonzero=*/true));
}

/// Witness check: m in [0, q-1] and (x+m)*S = P1.
inline bool check_sdh(const Suite& suite, const SdhInstance& inst,
                      const SdhSolution& sol) {
  if (!inst.x) throw Error("sdh: checking requires the witness");
  if (sol.s.group != Group::G1 || !suite.is_valid(sol.s) ||
      !suite.sc_in_range(sol.m)) {
    return false;
  }
  Scalar xm = suite.sc_add(*inst.x, sol.m);
  if (xm.value == 0) return false;
  return suite.mul(xm, sol.s) == suite.gen1();
}

inline SdhSolution sdh_canonical_solution(const Suite& suite,
                                          const SdhInstance& inst,
                                          RandomSource& rng) {
  if (!inst.x) throw Error("sdh: solving requires the witness");
  for (;;) {
    Scalar m = suite.sample_scalar(rng);
    Scalar xm = suite.sc_add(*inst.x, m);
    if (xm.value == 0) continue;
    return SdhSolution{suite.mul(suite.sc_inv(xm), suite.gen1()), m};
  }
}

// --- PR1 (the ell-DVSBB relation): given X = x*P2, Y = y*P2 and pairs
// (m_i, R_i = (x+m_i)^{-1}*P1), produce (m, R, S, T) with m fresh and
//   <S, X + m*P2> = <R, P2>    and    <T, P2> = <R, Y>.

struct Pr1Instance {
  GroupElement x2, y2;             // X, Y in G2
  std::vector<Scalar> ms;          // m_1..m_ell
  std::vector<GroupElement> rs;    // R_1..R_ell in G1
  std::optional<std::pair<Scalar, Scalar>> witness;  // (x, y)

  void erase_witness() { witness.reset(); }
};

struct Pr1Solution {
  Scalar m;
  GroupElement r, s, t;  // G1
};

inline Pr1Instance gen_pr1_with(const Suite& suite, unsigned ell, const Scalar& x,
                                const Scalar& y, RandomSource& rng) {
  if (ell < 1) throw Error("pr1: ell must be >= 1");
  Pr1Instance inst;
  inst.witness = {x, y};
  inst.x2 = suite.mul(x, suite.gen2());
  inst.y2 = suite.mul(y, suite.gen2());
  for (unsigned i = 0; i < ell; ++i) {
    for (;;) {
      Scalar m = suite.sample_scalar(rng);
      Scalar xm = suite.sc_add(x, m);
      if (xm.value == 0) continue;
      inst.ms.push_back(m);
      inst.rs.push_back(suite.mul(suite.sc_inv(xm), suite.gen1()));
      break;
    }
  }
  return inst;
}

inline Pr1Instance gen_pr1(const Suite& suite, unsigned ell, RandomSource& rng) {
  Scalar x = suite.sample_scalar(rng, true);
  Scalar y = suite.sample_scalar(rng, true);
  return gen_pr1_with(suite, ell, x, y, rng);
}

/// Purely public check: freshness of m plus the two pairing equations.
/// Works with the witness erased.
inline bool check_pr1(const Suite& suite, const Pr1Instance& inst,
                      const Pr1Solution& sol) {
  if (!suite.sc_in_range(sol.m)) return false;
  for (const Scalar& used : inst.ms) {
    if (used == sol.m) return false;
  }
  for (const GroupElement* e : {&sol.r, &sol.s, &sol.t}) {
    if (e->group != Group::G1 || !suite.is_valid(*e)) return false;
  }
  GroupElement slot = suite.add(inst.x2, suite.mul(sol.m, suite.gen2()));
  if (!(suite.pair(sol.s, slot) == suite.pair(sol.r, suite.gen2()))) return false;
  return suite.pair(sol.t, suite.gen2()) == suite.pair(sol.r, inst.y2);
}

inline Pr1Solution pr1_canonical_solution(const Suite& suite,
                                          const Pr1Instance& inst,
                                          RandomSource& rng) {
  if (!inst.witness) throw Error("pr1: solving requires the witness");
  const auto& [x, y] = *inst.witness;
  for (;;) {
    Scalar m = suite.sample_scalar(rng);
    Scalar xm = suite.sc_add(x, m);
    if (xm.value == 0) continue;
    bool used = false;
    for (const Scalar& mi : inst.ms) used = used || mi == m;
    if (used) continue;
    Scalar rho = suite.sample_scalar(rng, true);
    GroupElement r = suite.mul(rho, suite.gen1());
    GroupElement s = suite.mul(suite.sc_mul(rho, suite.sc_inv(xm)), suite.gen1());
    GroupElement t = suite.mul(suite.sc_mul(rho, y), suite.gen1());
    return Pr1Solution{m, r, s, t};
  }
}

// --- PR2: given x*P1, y*P2, z*P2, produce (R, Q) with <R, Q> = <P1, P2>^xyz.

struct Pr2Instance {
  GroupElement x1;      // x*P1 in G1
  GroupElement y2, z2;  // y*P2, z*P2 in G2
  std::optional<std::array<Scalar, 3>> witness;  // (x, y, z)

  void erase_witness() { witness.reset(); }
};

struct Pr2Solution {
  GroupElement r;  // G1
  GroupElement q;  // G2
};

inline Pr2Instance gen_pr2_with(const Suite& suite, const Scalar& x,
                                const Scalar& y, const Scalar& z) {
  Pr2Instance inst;
  inst.witness = {x, y, z};
  inst.x1 = suite.mul(x, suite.gen1());
  inst.y2 = suite.mul(y, suite.gen2());
  inst.z2 = suite.mul(z, suite.gen2());
  return inst;
}

inline Pr2Instance gen_pr2(const Suite& suite, RandomSource& rng) {
  return gen_pr2_with(suite, suite.sample_scalar(rng, true),
                      suite.sample_scalar(rng, true),
                      suite.sample_scalar(rng, true));
}

inline bool check_pr2(const Suite& suite, const Pr2Instance& inst,
                      const Pr2Solution& sol) {
  if (!inst.witness) throw Error("pr2: checking requires the witness");
  if (sol.r.group != Group::G1 || sol.q.group != Group::G2 ||
      !suite.is_valid(sol.r) || !suite.is_valid(sol.q)) {
    return false;
  }
  const auto& [x, y, z] = *inst.witness;
  Scalar xyz = suite.sc_mul(suite.sc_mul(x, y), z);
  GroupElement target = suite.gt_pow(suite.pair(suite.gen1(), suite.gen2()), xyz);
  return suite.pair(sol.r, sol.q) == target;
}

inline Pr2Solution pr2_canonical_solution(const Suite& suite,
                                          const Pr2Instance& inst) {
  if (!inst.witness) throw Error("pr2: solving requires the witness");
  const auto& [x, y, z] = *inst.witness;
  (void)x;
  return Pr2Solution{inst.x1, suite.mul(suite.sc_mul(y, z), suite.gen2())};
}

// --- PR3, the decisional variant: distinguish (R, Q) = (xt*P1, yzt^{-1}*P2)
// from a uniform pair.

struct Pr3Instance {
  GroupElement x1;      // x*P1
  GroupElement y2, z2;  // y*P2, z*P2
  GroupElement r;       // G1
  GroupElement q;       // G2
  int d = 0;            // harness-held challenge bit
  std::optional<std::array<Scalar, 4>> witness;  // (x, y, z, t)

  void erase_witness() { witness.reset(); }
};

inline Pr3Instance gen_pr3_with(const Suite& suite, int d, const Scalar& x,
                                const Scalar& y, const Scalar& z, const Scalar& t,
                                RandomSource& rng) {
  if (d != 0 && d != 1) throw Error("pr3: d must be 0 or 1");
  Pr3Instance inst;
  inst.d = d;
  inst.witness = {x, y, z, t};
  inst.x1 = suite.mul(x, suite.gen1());
  inst.y2 = suite.mul(y, suite.gen2());
  inst.z2 = suite.mul(z, suite.gen2());
  if (d == 0) {
    inst.r = suite.mul(suite.sc_mul(x, t), suite.gen1());
    inst.q = suite.mul(suite.sc_mul(suite.sc_mul(y, z), suite.sc_inv(t)),
                       suite.gen2());
  } else {
    inst.r = suite.sample(Group::G1, rng);
    inst.q = suite.sample(Group::G2, rng);
  }
  return inst;
}

inline Pr3Instance gen_pr3(const Suite& suite, int d, RandomSource& rng) {
  Scalar x = suite.sample_scalar(rng, true);
  Scalar y = suite.sample_scalar(rng, true);
  Scalar z = suite.sample_scalar(rng, true);
  Scalar t = suite.sample_scalar(rng, true);
  return gen_pr3_with(suite, d, x, y, z, t, rng);
}

/// The experiment's scoring rule: a guess wins iff it names the hidden bit.
inline bool check_pr3_guess(const Pr3Instance& inst, int guess) {
  return guess == inst.d;
}

/// Witness-side structure test: does (R, Q) pair to <P1, P2>^xyz? True for
/// every d=0 instance, false for uniform pairs except with probability 1/q.
inline bool pr3_pair_structured(const Suite& suite, const Pr3Instance& inst) {
  if (!inst.witness) throw Error("pr3: structure check requires the witness");
  const auto& [x, y, z, t] = *inst.witness;
  (void)t;
  Scalar xyz = suite.sc_mul(suite.sc_mul(x, y), z);
  GroupElement target = suite.gt_pow(suite.pair(suite.gen1(), suite.gen2()), xyz);
  return suite.pair(inst.r, inst.q) == target;
}

// --- The Diffie-Hellman 4-tuple well-formedness relation behind the
// knowledge-of-exponent assumption: given X = x*P2 and a pair (R, S) in
// G1 x G2, accept iff psi(S) = x*R, checked as <R, X> = <psi(S), P2>.
// No extractor exists here; this is a documentation-level checker and it
// needs a suite with psi.

inline bool kea_tuple_wellformed(const Suite& suite, const GroupElement& x2,
                                 const GroupElement& r, const GroupElement& s) {
  if (!suite.supports_psi()) {
    throw Error("kea check: requires a suite with psi");
  }
  if (x2.group != Group::G2 || r.group != Group::G1 || s.group != Group::G2) {
    return false;
  }
  return suite.pair(r, x2) == suite.pair(suite.psi(s), suite.gen2());
}

}  // namespace udvs::problems
