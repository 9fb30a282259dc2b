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
#include "udvs/games.hpp"

using namespace udvs;
using namespace udvs::games;
using test::doc_suite;

namespace {

mpz_class prime_at_least(unsigned long lo) {
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), mpz_class(lo - 1).get_mpz_t());
  return p;
}

template <class S>
class ThrowingAdversary : public EfcmaAdversary<S> {
 public:
  std::optional<std::pair<Bytes, typename S::DSig>> run(
      const GameEnv&, const typename S::SignerPublic&, const VerifierPublic&,
      EfcmaOracles<S>&, RandomSource&) override {
    throw Error("protocol violation");
  }
};

/// Queries its own challenge message in the find stage, then claims b=1.
template <class S>
class FreshnessViolatingPsi : public PsiStrategy<S> {
 public:
  Bytes find(const GameEnv&, const PsiView<S>&, PsiOracles<S>& oracles,
             RandomSource&) override {
    Bytes m = to_bytes("will be the challenge");
    (void)oracles.sign(m, 0);
    return m;
  }
  int guess(const GameEnv&, const PsiView<S>&, BytesView, const typename S::DSig&,
            PsiOracles<S>&, RandomSource&) override {
    return 1;
  }
};

}  // namespace

TEMPLATE_TEST_CASE("null and replay adversaries never win", "[games]", BbUdvs,
                   BlsUdvs) {
  using S = TestType;
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(101);
  NullAdversary<S> null_adv;
  ReplayAdversary<S> replay_adv;
  for (int i = 0; i < 200; ++i) {
    auto t1 = run_efcma<S>(env, null_adv, {}, rng);
    REQUIRE_FALSE(t1.outcome);
    auto t2 = run_efcma<S>(env, replay_adv, {}, rng);
    REQUIRE_FALSE(t2.outcome);
    // The replay tuple does verify; only freshness blocks the win.
    REQUIRE(t2.final_dverify);
    REQUIRE_FALSE(t2.fresh);
    REQUIRE(t2.q_sign == 1);
  }
}

TEMPLATE_TEST_CASE("re-randomized replays verify but score zero", "[games]",
                   BbUdvs, BlsUdvs) {
  using S = TestType;
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(103);
  RerandomizingAdversary<S> adv;
  for (int i = 0; i < 100; ++i) {
    auto tr = run_efcma<S>(env, adv, {}, rng);
    REQUIRE(tr.final_dverify);
    REQUIRE_FALSE(tr.fresh);
    REQUIRE_FALSE(tr.outcome);
  }
}

TEMPLATE_TEST_CASE("an insider holding sk_v wins via fake", "[games]", BbUdvs,
                   BlsUdvs) {
  using S = TestType;
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(107);
  auto signer = S::keygen_signer(env, rng);
  auto verifier = keygen_verifier(suite, rng);
  // sk_v handed over out of band: this is designed non-transferability at
  // work, not a forgery break.
  InsiderFakeAdversary<S> insider(verifier.sk);
  auto tr = run_efcma<S>(env, insider, {}, rng, &signer, &verifier);
  REQUIRE(tr.final_dverify);
  REQUIRE(tr.fresh);
  REQUIRE(tr.outcome);
}

TEST_CASE("efcma bookkeeping: limits, disabled oracle, violations", "[games]") {
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(109);

  EfcmaLimits tight;
  tight.max_sign = 0;
  ReplayAdversary<BbUdvs> replay;
  auto tr = run_efcma<BbUdvs>(env, replay, tight, rng);
  REQUIRE(tr.violation == "no-forgery");  // oracle refused, adversary conceded
  REQUIRE(tr.q_sign == 0);
  REQUIRE_FALSE(tr.outcome);

  ThrowingAdversary<BbUdvs> thrower;
  auto tv = run_efcma<BbUdvs>(env, thrower, {}, rng);
  REQUIRE(tv.violation == "protocol violation");
  REQUIRE_FALSE(tv.outcome);

  // UDVS-BB analysis configuration: no verifying oracle.
  EfcmaLimits no_verify;
  no_verify.verify_oracle = false;
  auto tn = run_efcma<BbUdvs>(env, replay, no_verify, rng);
  REQUIRE(tn.q_verify == 0);
  REQUIRE(tn.final_dverify);  // the final check still runs

  // Hash-oracle queries land in the q_H counter.
  struct HashingAdversary : EfcmaAdversary<BlsUdvs> {
    std::optional<std::pair<Bytes, bls::DesignatedSig>> run(
        const GameEnv& env2, const bls::SignerPublic&, const VerifierPublic&,
        EfcmaOracles<BlsUdvs>& oracles, RandomSource& rng2) override {
      Bytes m = to_bytes("probe");
      (void)oracles.hash_scalar(m);
      (void)oracles.hash_g1(m, sample_salt(env2.h2g.salt_bits(), rng2));
      return std::nullopt;
    }
  } hashing_adv;
  auto th = run_efcma<BlsUdvs>(env, hashing_adv, {}, rng);
  REQUIRE(th.q_hash == 2);
  REQUIRE(th.to_log().find("event hash ") != std::string::npos);
}

TEST_CASE("transcript log is line oriented and counts match", "[games]") {
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(113);
  ReplayAdversary<BlsUdvs> replay;
  auto tr = run_efcma<BlsUdvs>(env, replay, {}, rng);
  std::string log = tr.to_log();
  REQUIRE(log.find("suite mock-v1\n") != std::string::npos);
  REQUIRE(log.find("scheme udvs-bls\n") != std::string::npos);
  REQUIRE(log.find("event sign ") != std::string::npos);
  REQUIRE(log.find("counters qS=1 qV=0 qH=0\n") != std::string::npos);
  REQUIRE(log.find("final dverify=1 fresh=0 outcome=0") != std::string::npos);
  // One line per event plus the four header/footer lines.
  size_t lines = std::count(log.begin(), log.end(), '\n');
  REQUIRE(lines == tr.events.size() + 4);

  // Identical tape, identical log.
  Drbg rng_a(991), rng_b(991);
  auto ta = run_efcma<BlsUdvs>(env, replay, {}, rng_a);
  auto tb = run_efcma<BlsUdvs>(env, replay, {}, rng_b);
  REQUIRE(ta.to_log() == tb.to_log());
}

TEST_CASE("freshness invariant holds across all canned adversaries", "[games]") {
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg rng(127);
  auto signer = BbUdvs::keygen_signer(env, rng);
  auto verifier = keygen_verifier(suite, rng);

  std::vector<std::unique_ptr<EfcmaAdversary<BbUdvs>>> adversaries;
  adversaries.push_back(std::make_unique<NullAdversary<BbUdvs>>());
  adversaries.push_back(std::make_unique<ReplayAdversary<BbUdvs>>());
  adversaries.push_back(std::make_unique<RerandomizingAdversary<BbUdvs>>());
  adversaries.push_back(std::make_unique<InsiderFakeAdversary<BbUdvs>>(verifier.sk));

  for (auto& adv : adversaries) {
    for (int i = 0; i < 50; ++i) {
      auto tr = run_efcma<BbUdvs>(env, *adv, {}, rng, &signer, &verifier);
      if (tr.outcome) REQUIRE(tr.fresh);  // never outcome 1 with m* in L
    }
  }
}

TEST_CASE("psi: coin flip and constant distinguishers have no advantage",
          "[games]") {
  MockSuite suite(prime_at_least(1009), 2);
  GameEnv env = make_env(suite);
  Drbg master(131);

  CoinFlipPsi<BlsUdvs> coin;
  auto r1 = run_psi<BlsUdvs>(env, coin, 2000, master);
  REQUIRE(r1.advantage < 3.0 / std::sqrt(2000.0));

  ConstantPsi<BlsUdvs> zero(0);
  auto r2 = run_psi<BlsUdvs>(env, zero, 200, master);
  REQUIRE(r2.advantage == 0.0);
}

TEST_CASE("psi: the public equations identify the UDVS-BB signer", "[games]") {
  MockSuite suite(prime_at_least(1009), 2);
  GameEnv env = make_env(suite);
  Drbg master(137);
  BbPublicDistinguisher eq;
  auto r = run_psi<BbUdvs>(env, eq, 300, master);
  REQUIRE(r.advantage >= 0.97);
}

TEST_CASE("psi: the same public attack carries no signal against UDVS-BLS",
          "[games]") {
  MockSuite suite(prime_at_least(1009), 2);
  GameEnv env = make_env(suite);
  Drbg master(139);
  BlsPublicAttempt attempt;
  auto r = run_psi<BlsUdvs>(env, attempt, 500, master);
  REQUIRE(r.advantage <= 0.1);
}

TEST_CASE("psi freshness rule zeroes violating trials", "[games]") {
  MockSuite suite(prime_at_least(521), 3);
  GameEnv env = make_env(suite);
  Drbg master(149);
  FreshnessViolatingPsi<BlsUdvs> violator;
  auto r = run_psi<BlsUdvs>(env, violator, 50, master);
  REQUIRE(r.violations == 100);  // both branches of every trial
  REQUIRE(r.advantage == 0.0);
}

TEST_CASE("source hiding checker: exhaustive grids are clean", "[games]") {
  MockSuite suite = doc_suite();
  GameEnv env = make_env(suite);
  Drbg rng(151);
  auto bb_report = check_source_hiding_bb(env, 121, rng);
  REQUIRE(bb_report.exhaustive);
  REQUIRE(bb_report.checked == 100);  // full 10 x 10 grid
  REQUIRE(bb_report.mismatches == 0);

  auto bls_report = check_source_hiding_bls(env, 100, rng);
  REQUIRE(bls_report.exhaustive);
  REQUIRE(bls_report.checked == 100);  // 10 salts x 10 randomizers
  REQUIRE(bls_report.mismatches == 0);
}

TEST_CASE("source hiding checker: random draws at larger order", "[games]") {
  MockSuite suite = MockSuite::generate(14, *std::make_unique<Drbg>(157).get());
  GameEnv env = make_env(suite);
  Drbg rng(163);
  auto bb_report = check_source_hiding_bb(env, 100, rng);
  REQUIRE_FALSE(bb_report.exhaustive);
  REQUIRE(bb_report.checked == 100);
  REQUIRE(bb_report.mismatches == 0);

  auto bls_report = check_source_hiding_bls(env, 100, rng);
  REQUIRE(bls_report.checked == 100);
  REQUIRE(bls_report.mismatches == 0);
}

TEST_CASE("source hiding checker flags a broken fake", "[games]") {
  MockSuite suite = doc_suite();
  GameEnv env = make_env(suite);
  Drbg rng(167);
  auto broken_bb = check_source_hiding_bb(env, 121, rng, [&](bb::DesignatedSig& tau) {
    tau.q2 = suite.add(tau.q2, suite.gen1());
  });
  REQUIRE(broken_bb.mismatches == broken_bb.checked);

  auto broken_bls =
      check_source_hiding_bls(env, 100, rng, [&](bls::DesignatedSig& tau) {
        tau.q1 = suite.add(tau.q1, suite.gen1());
      });
  REQUIRE(broken_bls.mismatches == broken_bls.checked);
}
