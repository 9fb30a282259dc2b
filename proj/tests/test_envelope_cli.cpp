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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "udvs/cli.hpp"
#include "udvs/envelope.hpp"

using namespace udvs;
using test::doc_suite;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path old = fs::current_path();
  fs::path dir;

  explicit TempDir(std::string_view tag) {
    dir = fs::temp_directory_path() / ("udvs-test-" + std::string(tag));
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::current_path(dir);
  }
  ~TempDir() {
    fs::current_path(old);
    fs::remove_all(dir);
  }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("envelope round trips for every artifact kind", "[envelope]") {
  Drbg rng(301);
  MockSuite mock = doc_suite();
  ExpSuite exp = ExpSuite::generate(48, rng);
  const Suite* suites[] = {static_cast<const Suite*>(&mock), &exp};

  for (const Suite* sp : suites) {
    const Suite& suite = *sp;
    CAPTURE(suite.id());
    uint32_t nr = default_salt_bits(suite.security_bits());
    ScalarHasher h2s(suite);
    GroupHasher h2g(suite, nr);

    auto params_env = envelope::encode_params(suite, nr);
    auto params = envelope::decode_params(
        envelope::from_text(envelope::to_text(params_env)));
    REQUIRE(params.suite->id() == suite.id());
    REQUIRE(params.suite->order() == suite.order());
    REQUIRE(params.suite->gen2() == suite.gen2());
    REQUIRE(params.salt_bits == nr);

    auto bb_key = bb::keygen(suite, rng);
    auto bb_sk2 = envelope::decode_bb_signer_secret(
        suite, envelope::from_text(envelope::to_text(
                   envelope::encode_bb_signer_secret(suite, bb_key))));
    REQUIRE(bb_sk2.pk == bb_key.pk);
    auto bb_pk2 = envelope::decode_bb_signer_public(
        suite, envelope::from_text(envelope::to_text(
                   envelope::encode_bb_signer_public(suite, bb_key.pk))));
    REQUIRE(bb_pk2 == bb_key.pk);

    auto bls_key = bls::keygen(suite, rng);
    auto bls_pk2 = envelope::decode_bls_signer_public(
        suite, envelope::from_text(envelope::to_text(
                   envelope::encode_bls_signer_public(suite, bls_key.pk))));
    REQUIRE(bls_pk2 == bls_key.pk);

    auto vk = keygen_verifier(suite, rng);
    auto vfile = envelope::decode_verifier_public(
        suite, envelope::from_text(envelope::to_text(envelope::encode_verifier_public(
                   suite, "bb", vk.pk, pop_prove(suite, vk)))));
    REQUIRE(vfile.pk == vk.pk);
    REQUIRE(vfile.pop.has_value());

    Bytes m = to_bytes("round trip");
    auto bb_sig = bb::sign(suite, h2s, bb_key.sk, m, rng);
    auto bb_sig2 = envelope::decode_bb_signature(
        suite, envelope::from_text(envelope::to_text(
                   envelope::encode_bb_signature(suite, bb_sig))));
    REQUIRE(bb_sig2 == bb_sig);

    auto bls_sig = bls::sign(suite, h2g, bls_key.sk, m, rng);
    auto bls_sig2 = envelope::decode_bls_signature(
        suite, nr, envelope::from_text(envelope::to_text(
                       envelope::encode_bls_signature(suite, bls_sig))));
    REQUIRE(bls_sig2 == bls_sig);

    auto tau_bb = bb::designate(suite, h2s, bb_key.pk, vk.pk, m, bb_sig, rng);
    auto tau_bb2 = envelope::decode_bb_dsig(
        suite, envelope::from_text(
                   envelope::to_text(envelope::encode_bb_dsig(suite, tau_bb))));
    REQUIRE(tau_bb2 == tau_bb);

    auto tau_bls = bls::designate(suite, h2g, bls_key.pk, vk.pk, m, bls_sig, rng);
    auto tau_bls2 = envelope::decode_bls_dsig(
        suite, nr, envelope::from_text(envelope::to_text(
                       envelope::encode_bls_dsig(suite, tau_bls))));
    REQUIRE(tau_bls2 == tau_bls);

    auto vk2 = keygen_verifier(suite, rng);
    std::vector<AttestedVerifierPublic> attested{
        {vk.pk, pop_prove(suite, vk)}, {vk2.pk, pop_prove(suite, vk2)}};
    auto multi = bls::multi_designate(suite, h2g, bls_key.pk, attested, m,
                                      bls_sig, rng);
    auto multi2 = envelope::decode_bls_multi_dsig(
        suite, nr, envelope::from_text(envelope::to_text(
                       envelope::encode_bls_multi_dsig(suite, multi))));
    REQUIRE(multi2 == multi);

    auto token = bb::make_token_signer(suite, bb_key.sk, vk.pk);
    auto tok2 = envelope::decode_bb_token(
        suite, envelope::from_text(envelope::to_text(envelope::encode_bb_token(
                   suite, token, bb_key.pk, vk.pk))));
    REQUIRE(tok2.token == token);

    auto del = bls::make_delegation_signer(suite, bls_key.sk, vk.pk);
    auto del2 = envelope::decode_bls_token(
        suite, envelope::from_text(envelope::to_text(envelope::encode_bls_token(
                   suite, del, bls_key.pk, vk.pk))));
    REQUIRE(del2.del == del);
  }
}

TEST_CASE("envelope rejects unknown identifiers and bad payloads", "[envelope]") {
  MockSuite suite = doc_suite();
  auto env = envelope::encode_params(suite, 4);
  auto j = envelope::to_json(env);

  auto mutated = j;
  mutated["version"] = "2";
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  mutated = j;
  mutated["suite"] = "curve25519";
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  mutated = j;
  mutated["scheme"] = "rsa";
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  mutated = j;
  mutated["role"] = "certificate";
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  mutated = j;
  mutated["extra"] = 1;
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  mutated = j;
  mutated["fields"]["q"] = "!!!not base64!!!";
  REQUIRE_THROWS_AS(envelope::from_json(mutated), DecodeError);

  REQUIRE_THROWS_AS(envelope::from_text("{not json"), DecodeError);

  // Out-of-range scalar payload inside an otherwise valid envelope.
  Drbg rng(303);
  auto key = bb::keygen(suite, rng);
  auto sig_env = envelope::encode_bb_signature(
      suite, bb::Signature{suite.sc(3), suite.gen1()});
  sig_env.fields["r"] = Bytes{0x0b};  // 11 >= q
  REQUIRE_THROWS_AS(envelope::decode_bb_signature(suite, sig_env), DecodeError);
  sig_env.fields["r"] = Bytes{0x01, 0x02};  // wrong width
  REQUIRE_THROWS_AS(envelope::decode_bb_signature(suite, sig_env), DecodeError);
}

TEST_CASE("dual-group and possession checks re-run at load", "[envelope]") {
  Drbg rng(307);
  ExpSuite suite = ExpSuite::generate(48, rng);
  auto vk = keygen_verifier(suite, rng);
  auto env = envelope::encode_verifier_public(suite, "bb", vk.pk,
                                              pop_prove(suite, vk));
  REQUIRE(env.has("u21"));  // psi-less suite publishes the dual form

  auto tampered = env;
  tampered.fields["u21"] = suite.encode(suite.add(vk.pk.u1, suite.gen1()));
  REQUIRE_THROWS_AS(envelope::decode_verifier_public(suite, tampered), DecodeError);

  auto no_dual = env;
  no_dual.fields.erase("u21");
  REQUIRE_THROWS_AS(envelope::decode_verifier_public(suite, no_dual), DecodeError);

  auto bad_pop = env;
  bad_pop.fields["pop_s"] = suite.encode(suite.gen1());
  REQUIRE_THROWS_AS(envelope::decode_verifier_public(suite, bad_pop), DecodeError);

  // The mock suite has psi, so the dual field is not serialized.
  MockSuite mock = doc_suite();
  auto mk = verifier_key_from_secret(mock, mock.sc(6));
  auto menv = envelope::encode_verifier_public(mock, "bb", mk.pk, std::nullopt);
  REQUIRE_FALSE(menv.has("u21"));
  REQUIRE(envelope::decode_verifier_public(mock, menv).pk == mk.pk);

  // Token consistency is re-verified regardless of the meta hint.
  auto signer = bb::keygen(suite, rng);
  auto token = bb::make_token_signer(suite, signer.sk, vk.pk);
  auto tok_env = envelope::encode_bb_token(suite, token, signer.pk, vk.pk);
  REQUIRE(tok_env.meta.at("consistent") == true);
  tok_env.fields["k1"] = suite.encode(suite.add(token.k1, suite.gen1()));
  REQUIRE_THROWS_AS(envelope::decode_bb_token(suite, tok_env), DecodeError);
}

TEST_CASE("public envelopes carry no secret fields", "[envelope]") {
  Drbg rng(311);
  MockSuite suite = doc_suite();
  auto bb_key = bb::keygen(suite, rng);
  auto bls_key = bls::keygen(suite, rng);
  auto vk = keygen_verifier(suite, rng);

  const std::set<std::string> signer_pub_allowed{"u2", "u21", "v2", "v21"};
  const std::set<std::string> verifier_pub_allowed{"u2", "u21", "pop_s"};

  for (const auto& env :
       {envelope::encode_bb_signer_public(suite, bb_key.pk),
        envelope::encode_bls_signer_public(suite, bls_key.pk)}) {
    for (const auto& [name, data] : env.fields) {
      (void)data;
      REQUIRE(signer_pub_allowed.contains(name));
    }
  }
  auto venv = envelope::encode_verifier_public(suite, "bb", vk.pk,
                                               pop_prove(suite, vk));
  for (const auto& [name, data] : venv.fields) {
    (void)data;
    REQUIRE(verifier_pub_allowed.contains(name));
  }
}

TEST_CASE("cli happy path for both schemes", "[cli]") {
  TempDir tmp("happy");
  spit("msg.txt", "a message to sign\n");

  REQUIRE(run({"params", "--suite", "mock-v1", "--bits", "10", "--seed", "7"})
              .code == 0);
  REQUIRE(run({"keygen", "--scheme", "bb", "--role", "signer", "--seed", "1"})
              .code == 0);
  REQUIRE(run({"sign", "-m", "msg.txt", "--seed", "2"}).code == 0);
  REQUIRE(run({"verify", "-m", "msg.txt"}).code == 0);

  REQUIRE(run({"keygen", "--scheme", "bls", "--role", "signer", "--seed", "3"})
              .code == 0);
  REQUIRE(run({"sign", "-m", "msg.txt", "--scheme", "bls", "--out",
               "bls-sig.json", "--seed", "4"})
              .code == 0);
  REQUIRE(run({"verify", "-m", "msg.txt", "--sig", "bls-sig.json"}).code == 0);

  // Wrong message rejects with exit 1, not 2.
  spit("other.txt", "a different message\n");
  auto bad = run({"verify", "-m", "other.txt"});
  REQUIRE(bad.code == 1);
}

TEST_CASE("cli designated flow and corruption taxonomy", "[cli]") {
  TempDir tmp("corrupt");
  spit("msg.txt", "designate me\n");
  REQUIRE(run({"params", "--bits", "12", "--seed", "9"}).code == 0);
  REQUIRE(run({"keygen", "--scheme", "bb", "--role", "signer", "--seed", "1"})
              .code == 0);
  REQUIRE(run({"keygen", "--scheme", "bb", "--role", "verifier", "--seed", "2"})
              .code == 0);
  REQUIRE(run({"sign", "-m", "msg.txt", "--seed", "3"}).code == 0);
  REQUIRE(run({"designate", "-m", "msg.txt", "--verifier", "bb-verifier.pk.json",
               "--seed", "4"})
              .code == 0);
  REQUIRE(run({"dverify", "-m", "msg.txt", "--public", "--verifier",
               "bb-verifier.pk.json"})
              .code == 0);
  REQUIRE(run({"dverify", "-m", "msg.txt", "--verifier-secret",
               "bb-verifier.sk.json"})
              .code == 0);

  // Corrupting any byte of the designated signature file must yield exit 1
  // (equation failed) or exit 2 (decode failed), never 0.
  std::string original = slurp("dsig.json");
  size_t payload = original.find("\"q1\": \"") + 7;
  for (size_t i = 0; i < 12; ++i) {
    std::string corrupted = original;
    char& c = corrupted[payload + i];
    c = c == 'A' ? 'B' : 'A';
    if (corrupted == original) continue;
    spit("dsig.json", corrupted);
    auto res = run({"dverify", "-m", "msg.txt", "--public", "--verifier",
                    "bb-verifier.pk.json"});
    CAPTURE(i, res.err);
    REQUIRE(res.code != 0);
  }
  spit("dsig.json", original);

  // Structural damage: truncated JSON and a wrong role both fail to decode.
  spit("dsig.json", original.substr(0, original.size() / 2));
  REQUIRE(run({"dverify", "-m", "msg.txt", "--public", "--verifier",
               "bb-verifier.pk.json"})
              .code == 2);
  spit("dsig.json", original);
  REQUIRE(run({"dverify", "-m", "msg.txt", "--dsig", "bb-verifier.pk.json",
               "--public", "--verifier", "bb-verifier.pk.json"})
              .code == 2);
}

TEST_CASE("cli reruns are byte identical", "[cli]") {
  auto run_flow = [](std::string_view tag) {
    TempDir tmp(tag);
    spit("msg.txt", "determinism\n");
    REQUIRE(run({"params", "--bits", "10", "--seed", "5"}).code == 0);
    REQUIRE(run({"keygen", "--scheme", "bls", "--role", "signer", "--seed", "6"})
                .code == 0);
    REQUIRE(run({"keygen", "--scheme", "bls", "--role", "verifier", "--seed", "7"})
                .code == 0);
    REQUIRE(run({"sign", "-m", "msg.txt", "--scheme", "bls", "--seed", "8"})
                .code == 0);
    REQUIRE(run({"designate", "-m", "msg.txt", "--verifier",
                 "bls-verifier.pk.json", "--seed", "9"})
                .code == 0);
    std::map<std::string, std::string> files;
    for (const char* f : {"params.json", "bls-signer.sk.json",
                          "bls-signer.pk.json", "bls-verifier.pk.json",
                          "sig.json", "dsig.json"}) {
      files[f] = slurp(f);
    }
    return files;
  };
  auto a = run_flow("det-a");
  auto b = run_flow("det-b");
  REQUIRE(a == b);
}

TEST_CASE("cli multi-verifier ordering is canonical", "[cli]") {
  TempDir tmp("multi");
  spit("msg.txt", "to the committee\n");
  REQUIRE(run({"params", "--bits", "12", "--seed", "20"}).code == 0);
  REQUIRE(run({"keygen", "--scheme", "bls", "--role", "signer", "--seed", "21"})
              .code == 0);
  for (int i = 1; i <= 3; ++i) {
    REQUIRE(run({"keygen", "--scheme", "bls", "--role", "verifier", "--seed",
                 std::to_string(30 + i), "--secret-out",
                 "v" + std::to_string(i) + ".sk.json", "--public-out",
                 "v" + std::to_string(i) + ".pk.json"})
                .code == 0);
  }
  REQUIRE(run({"sign", "-m", "msg.txt", "--scheme", "bls", "--seed", "22"})
              .code == 0);

  // Same seed, two different --verifier orders: identical canonical output.
  REQUIRE(run({"designate", "-m", "msg.txt", "--verifier", "v1.pk.json",
               "--verifier", "v2.pk.json", "--verifier", "v3.pk.json", "--out",
               "m1.json", "--seed", "23"})
              .code == 0);
  REQUIRE(run({"designate", "-m", "msg.txt", "--verifier", "v3.pk.json",
               "--verifier", "v1.pk.json", "--verifier", "v2.pk.json", "--out",
               "m2.json", "--seed", "23"})
              .code == 0);
  REQUIRE(slurp("m1.json") == slurp("m2.json"));

  for (int i = 1; i <= 3; ++i) {
    REQUIRE(run({"dverify", "-m", "msg.txt", "--dsig", "m1.json", "--verifier",
                 "v1.pk.json", "--verifier", "v2.pk.json", "--verifier",
                 "v3.pk.json", "--verifier-secret",
                 "v" + std::to_string(i) + ".sk.json"})
                .code == 0);
  }

  // The scheme is not publicly verifiable: --public is a usage error.
  REQUIRE(run({"dverify", "-m", "msg.txt", "--dsig", "m1.json", "--public",
               "--verifier", "v1.pk.json"})
              .code == 2);
}

TEST_CASE("cli aggregated udvs-bb designation", "[cli]") {
  TempDir tmp("agg");
  spit("msg.txt", "to the board\n");
  REQUIRE(run({"params", "--bits", "12", "--seed", "40"}).code == 0);
  REQUIRE(run({"keygen", "--scheme", "bb", "--role", "signer", "--seed", "41"})
              .code == 0);
  for (int i = 1; i <= 2; ++i) {
    REQUIRE(run({"keygen", "--scheme", "bb", "--role", "verifier", "--seed",
                 std::to_string(50 + i), "--secret-out",
                 "v" + std::to_string(i) + ".sk.json", "--public-out",
                 "v" + std::to_string(i) + ".pk.json"})
                .code == 0);
  }
  REQUIRE(run({"sign", "-m", "msg.txt", "--seed", "42"}).code == 0);
  REQUIRE(run({"designate", "-m", "msg.txt", "--verifier", "v1.pk.json",
               "--verifier", "v2.pk.json", "--seed", "43"})
              .code == 0);
  REQUIRE(run({"dverify", "-m", "msg.txt", "--public", "--verifier",
               "v1.pk.json", "--verifier", "v2.pk.json"})
              .code == 0);
  // Missing one of the aggregate's keys: the equations fail.
  REQUIRE(run({"dverify", "-m", "msg.txt", "--public", "--verifier",
               "v1.pk.json"})
              .code == 1);
}

TEST_CASE("cli usage errors and env fallback", "[cli]") {
  TempDir tmp("usage");
  auto r1 = run({"frobnicate"});
  REQUIRE(r1.code == 2);
  auto r2 = run({"sign"});  // missing -m
  REQUIRE(r2.code == 2);
  auto r3 = run({"sign", "-m", "absent.txt"});
  REQUIRE(r3.code == 2);

  REQUIRE(run({"--help"}).code == 0);

  // Parameters resolved through UDVS_SUITE_PATH when --params is omitted.
  REQUIRE(run({"params", "--bits", "10", "--seed", "70", "--out",
               "elsewhere.json"})
              .code == 0);
  ::setenv("UDVS_SUITE_PATH", (tmp.dir / "elsewhere.json").c_str(), 1);
  auto r4 = run({"keygen", "--scheme", "bb", "--role", "signer", "--seed", "71"});
  ::unsetenv("UDVS_SUITE_PATH");
  REQUIRE(r4.code == 0);
}

TEST_CASE("cli game subcommands", "[cli]") {
  TempDir tmp("game");
  auto sh = run({"game", "source-hiding", "--scheme", "udvs-bb", "--trials",
                 "121", "--seed", "1"});
  REQUIRE(sh.code == 0);
  REQUIRE(sh.out.find("0 mismatches") != std::string::npos);
  REQUIRE(sh.out.find("exhaustive") != std::string::npos);

  auto sh_bls = run({"game", "source-hiding", "--scheme", "udvs-bls", "--trials",
                     "100", "--seed", "1"});
  REQUIRE(sh_bls.code == 0);
  REQUIRE(sh_bls.out.find("0 mismatches") != std::string::npos);

  auto ef = run({"game", "efcma", "--scheme", "udvs-bb", "--trials", "25",
                 "--seed", "2"});
  REQUIRE(ef.code == 0);
  REQUIRE(ef.out.find("null-adversary wins: 0/25") != std::string::npos);
  REQUIRE(ef.out.find("insider-fake wins: 25/25") != std::string::npos);

  auto psi = run({"game", "psi", "--scheme", "udvs-bls", "--trials", "60",
                  "--seed", "3"});
  REQUIRE(psi.code == 0);
  REQUIRE(psi.out.find("coin-flip advantage") != std::string::npos);

  // Identical invocations print identical reports.
  auto psi2 = run({"game", "psi", "--scheme", "udvs-bls", "--trials", "60",
                   "--seed", "3"});
  REQUIRE(psi.out == psi2.out);
}
