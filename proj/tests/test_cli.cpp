#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <set>
#include <string>

#include "doctest.h"
#include "moritakit/error.hpp"
#include "moritakit/verify.hpp"

using namespace moritakit;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("cd ") + MORITAKIT_DATA_DIR + " && " + MORITAKIT_CLI_PATH + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

CorpusBounds small_bounds() {
  CorpusBounds b;
  b.categories = 12;
  b.functors = 16;
  b.operads = 8;
  b.maps = 12;
  return b;
}

}  // namespace

TEST_CASE("cli morita and validate") {
  const Run m = cli("morita cat iota.json");
  CHECK(m.code == 0);
  const Json j = Json::parse(m.out);
  CHECK(j["ff"] == true);
  CHECK(j["retracts"] == true);
  CHECK(j["verdict"] == true);
  CHECK(j["oracle"] == "agree");
  CHECK(j["essentially_surjective"] == false);

  const Run bad = cli("validate bad_table.json");
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "NonAssociative"));

  CHECK(cli("validate b_operad.json").code == 0);
  CHECK(cli("validate b_algebra.json --operad b_operad.json").code == 0);
  CHECK(cli("validate b_algebra.json").code == 1);
  CHECK(cli("validate missing.json").code == 1);
  CHECK(cli("validate idem_h0.json --category Idem").code == 0);
  CHECK(cli("morita operad b_identity.json").code == 0);
  CHECK(cli("frobnicate").code == 1);
}

TEST_CASE("cli theory commands") {
  const Run h = cli("theory-hom b_operad.json --source a,a --target b --oracle");
  CHECK(h.code == 0);
  CHECK(has(h.out, "3 classes"));
  CHECK(has(cli("theory-hom b_operad.json --source a --target b").out, "1 classes"));

  const Run c = cli("compose b_operad.json --first diagonal_a.json --second product_m.json");
  REQUIRE(c.code == 0);
  const Json j = Json::parse(c.out);
  CHECK(j["components"][0]["map"] == Json::array({0, 0}));
  CHECK(cli("compose b_operad.json --first product_m.json --second product_m.json").code == 1);

  const Run r = cli("retract-search \"j!(Split)\" --colour 1");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["theory_retract"]["word"] == Json::array({"0"}));
}

TEST_CASE("cli nerves, algebras and bar constructions") {
  CHECK(has(cli("nerve Split --dim 2").out, "levels 2,5,13"));
  CHECK(has(cli("ret --dim 4").out, "nondegenerate 2,2,1,0,0"));
  CHECK(has(cli("karoubi Idem").out, "2 objects, 5 morphisms"));
  CHECK(has(cli("dendroidal-nerve \"Omega(corolla(2))\" --tree corolla2.json").out, "2 dendrices"));
  CHECK(has(cli("algebras b_operad.json --carrier 2,2").out, "8 algebras"));
  CHECK(has(cli("algebras \"j!(Idem)\" --carrier 2").out, "3 algebras"));
  const Run k = cli("hokan iota.json --module idem_h0.json --at 1 --levels 3 --compare-pi0");
  CHECK(k.code == 0);
  CHECK(has(k.out, "pi0 1"));
  CHECK(has(k.out, "coend 1"));
  const Run jk = cli("verify-jk b_operad.json --algebra b_algebra.json --a a --b b --levels 1 --words 4");
  CHECK(jk.code == 0);
  CHECK(Json::parse(jk.out)["j_homotopy"] == true);
  CHECK(cli("verify-jk b_operad.json --algebra b_algebra.json --a a --b b --levels 1 --words 3").code == 3);
}

TEST_CASE("verify registry and bounds") {
  const auto& reg = property_registry();
  std::set<std::string> names;
  for (const auto& p : reg) names.insert(p.name);
  CHECK(names.size() == reg.size());
  CHECK(reg.size() == 26);
  CHECK(names.count("finality") == 1);

  CorpusBounds b;
  parse_bounds("objects=3,maps=7", b);
  CHECK(b.objects == 3);
  CHECK(b.maps == 7);
  CHECK_THROWS_AS(parse_bounds("objects=0", b), Error);
  CHECK_THROWS_AS(parse_bounds("planets=2", b), Error);
  CHECK_THROWS_AS(parse_bounds("objects", b), Error);

  VerifyConfig cfg;
  cfg.only = "no-such-property";
  CHECK_THROWS_AS(verify_suite(cfg), Error);
}

TEST_CASE("verify suite on a small corpus") {
  VerifyConfig cfg;
  cfg.seed = 3;
  cfg.bounds = small_bounds();
  cfg.only = "finality";
  const VerifySummary s = verify_suite(cfg);
  REQUIRE(s.results.size() == 1);
  CHECK(s.ok());
  CHECK(s.results[0].cases > 2);
  CHECK(summary_text(s) == summary_text(verify_suite(cfg)));

  cfg.only = "corpus-valid";
  cfg.inject_corrupt = true;
  const VerifySummary bad = verify_suite(cfg);
  CHECK(!bad.ok());
  CHECK(has(bad.results[0].witness, "NotEquivariant"));

  const Run r = cli("verify --seed 3 --bounds categories=12,functors=16,operads=8,maps=12 --only corpus-valid --inject-corrupt");
  CHECK(r.code == 2);
  CHECK(has(r.out, "witness"));
  CHECK(cli("verify --only karoubi-morita --bounds categories=10,functors=10,operads=5,maps=10").code == 0);
}
