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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "udvs/problems.hpp"
#include "udvs/udvs_bb.hpp"

using namespace udvs;
using namespace udvs::problems;
using test::doc_suite;
using test::to_u64;

namespace {

mpz_class prime_at_least(unsigned long lo) {
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), mpz_class(lo - 1).get_mpz_t());
  return p;
}

}  // namespace

TEST_CASE("sdh instance and canonical solution", "[problems]") {
  MockSuite suite = doc_suite();
  auto inst = gen_sdh_with(suite, 3, suite.sc(2));
  REQUIRE(inst.powers.size() == 3);
  REQUIRE(to_u64(inst.powers[0]) == 2);
  REQUIRE(to_u64(inst.powers[1]) == 4);
  REQUIRE(to_u64(inst.powers[2]) == 8);

  // m = 3: S = (2+3)^{-1} * P1 = 9 * P1.
  SdhSolution sol{suite.mul(suite.sc(9), suite.gen1()), suite.sc(3)};
  REQUIRE(check_sdh(suite, inst, sol));

  Drbg rng(211);
  for (int i = 0; i < 50; ++i) {
    REQUIRE(check_sdh(suite, inst, sdh_canonical_solution(suite, inst, rng)));
  }

  auto wrong = sol;
  wrong.s = suite.add(wrong.s, suite.gen1());
  REQUIRE_FALSE(check_sdh(suite, inst, wrong));

  auto erased = inst;
  erased.erase_witness();
  REQUIRE_THROWS_AS(check_sdh(suite, erased, sol), Error);
  REQUIRE_THROWS_AS(gen_sdh_with(suite, 0, suite.sc(2)), Error);
}

TEST_CASE("pr1 documentation instance", "[problems]") {
  MockSuite suite = doc_suite();
  test::ScriptedRandom rng;
  rng.push_scalar(suite, 5);  // forces m_1 = 5
  auto inst = gen_pr1_with(suite, 1, suite.sc(3), suite.sc(6), rng);
  REQUIRE(to_u64(inst.ms[0]) == 5);
  REQUIRE(to_u64(inst.rs[0]) == 7);  // (3+5)^{-1} = 8^{-1} = 7 mod 11
  REQUIRE(to_u64(inst.x2) == 3);
  REQUIRE(to_u64(inst.y2) == 6);
}

TEST_CASE("pr1 checking is public and survives witness erasure", "[problems]") {
  MockSuite suite(prime_at_least(1009), 2);
  Drbg rng(223);
  auto inst = gen_pr1(suite, 4, rng);
  auto sol = pr1_canonical_solution(suite, inst, rng);
  REQUIRE(check_pr1(suite, inst, sol));

  inst.erase_witness();
  REQUIRE(check_pr1(suite, inst, sol));  // checker never touches the witness
  REQUIRE_THROWS_AS(pr1_canonical_solution(suite, inst, rng), Error);

  // A used m is not fresh.
  auto stale = sol;
  stale.m = inst.ms[0];
  REQUIRE_FALSE(check_pr1(suite, inst, stale));
}

TEST_CASE("pr1 accepts the tuple mapped from a UDVS-BB designation",
          "[problems]") {
  MockSuite suite(prime_at_least(1009), 2);
  ScalarHasher h2s(suite);
  Drbg rng(227);
  auto signer = bb::keygen(suite, rng);
  auto verifier = keygen_verifier(suite, rng);

  // Instance keyed to (x, y) = (u_a, u_b).
  auto inst = gen_pr1_with(suite, 3, signer.sk.u, verifier.sk.u, rng);

  Bytes m_star = to_bytes("forged target");
  auto sig = bb::sign(suite, h2s, signer.sk, m_star, rng);
  auto tau = bb::designate(suite, h2s, signer.pk, verifier.pk, m_star, sig, rng);

  // (m, R, S, T) = (h(m*) + r* v_a, Q3, Q1, Q2).
  Pr1Solution mapped{
      suite.sc_add(h2s(m_star), suite.sc_mul(tau.r, signer.sk.v)),
      tau.q3, tau.q1, tau.q2};
  bool fresh = true;
  for (const auto& mi : inst.ms) fresh = fresh && !(mi == mapped.m);
  REQUIRE(fresh);  // with overwhelming probability at q >= 1009
  REQUIRE(check_pr1(suite, inst, mapped));
}

TEST_CASE("pr2 canonical solution and rejection", "[problems]") {
  MockSuite suite = doc_suite();
  auto inst = gen_pr2_with(suite, suite.sc(2), suite.sc(3), suite.sc(4));
  auto sol = pr2_canonical_solution(suite, inst);
  REQUIRE(sol.r == inst.x1);
  REQUIRE(to_u64(sol.q) == 1);  // 3*4 = 12 = 1 mod 11
  REQUIRE(check_pr2(suite, inst, sol));

  auto bad = sol;
  bad.q = suite.add(bad.q, suite.gen2());
  REQUIRE_FALSE(check_pr2(suite, inst, bad));

  auto erased = inst;
  erased.erase_witness();
  REQUIRE_THROWS_AS(check_pr2(suite, erased, sol), Error);
}

TEST_CASE("pr3 documentation instance and structure check", "[problems]") {
  MockSuite suite = doc_suite();
  Drbg rng(229);
  auto inst = gen_pr3_with(suite, 0, suite.sc(2), suite.sc(3), suite.sc(4),
                           suite.sc(5), rng);
  REQUIRE(to_u64(inst.r) == 10);  // x*t = 10 mod 11
  REQUIRE(to_u64(inst.q) == 9);   // y*z*t^{-1} = 12*9 = 108 = 9 mod 11
  // pair(R, Q) = 90 = 2 = xyz in the mock's additive G3.
  REQUIRE(to_u64(suite.pair(inst.r, inst.q)) == 2);
  REQUIRE(pr3_pair_structured(suite, inst));
  REQUIRE(check_pr3_guess(inst, 0));
  REQUIRE_FALSE(check_pr3_guess(inst, 1));
}

TEST_CASE("problem harness rates at q >= 1009", "[problems]") {
  MockSuite suite(prime_at_least(1009), 2);
  Drbg rng(233);
  const int trials = 200;

  int sdh_accept = 0, pr1_accept = 0, pr2_accept = 0, pr3_accept = 0;
  for (int i = 0; i < trials; ++i) {
    auto sdh = gen_sdh(suite, 3, rng);
    SdhSolution sdh_rand{suite.sample(Group::G1, rng), suite.sample_scalar(rng)};
    sdh_accept += check_sdh(suite, sdh, sdh_rand) ? 1 : 0;
    REQUIRE(check_sdh(suite, sdh, sdh_canonical_solution(suite, sdh, rng)));

    auto pr1 = gen_pr1(suite, 3, rng);
    Pr1Solution pr1_rand{suite.sample_scalar(rng), suite.sample(Group::G1, rng),
                         suite.sample(Group::G1, rng), suite.sample(Group::G1, rng)};
    pr1_accept += check_pr1(suite, pr1, pr1_rand) ? 1 : 0;
    REQUIRE(check_pr1(suite, pr1, pr1_canonical_solution(suite, pr1, rng)));

    auto pr2 = gen_pr2(suite, rng);
    Pr2Solution pr2_rand{suite.sample(Group::G1, rng), suite.sample(Group::G2, rng)};
    pr2_accept += check_pr2(suite, pr2, pr2_rand) ? 1 : 0;
    REQUIRE(check_pr2(suite, pr2, pr2_canonical_solution(suite, pr2)));

    auto structured = gen_pr3(suite, 0, rng);
    REQUIRE(pr3_pair_structured(suite, structured));
    auto uniform = gen_pr3(suite, 1, rng);
    pr3_accept += pr3_pair_structured(suite, uniform) ? 1 : 0;
  }
  // Uniform candidates hit the relations with probability about 1/q.
  REQUIRE(sdh_accept <= 2);
  REQUIRE(pr1_accept == 0);
  REQUIRE(pr2_accept <= 2);
  REQUIRE(pr3_accept <= 2);
}

TEST_CASE("kea 4-tuple well-formedness check", "[problems]") {
  MockSuite suite(prime_at_least(1009), 2);
  Drbg rng(239);
  Scalar x = suite.sample_scalar(rng, true);
  GroupElement x2 = suite.mul(x, suite.gen2());

  // Honest pair: R = rho*P1, S = rho*X; then psi(S) = x*R.
  Scalar rho = suite.sample_scalar(rng, true);
  GroupElement r = suite.mul(rho, suite.gen1());
  GroupElement s = suite.mul(rho, x2);
  REQUIRE(kea_tuple_wellformed(suite, x2, r, s));

  GroupElement off = suite.add(s, suite.gen2());
  REQUIRE_FALSE(kea_tuple_wellformed(suite, x2, r, off));

  ExpSuite exp = ExpSuite::generate(32, rng);
  REQUIRE_THROWS_AS(kea_tuple_wellformed(exp, exp.gen2(), exp.gen1(), exp.gen2()),
                    Error);
}
