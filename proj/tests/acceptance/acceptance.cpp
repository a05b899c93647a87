// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "moritakit/bar.hpp"
#include "moritakit/error.hpp"
#include "moritakit/simpset.hpp"
#include "moritakit/theory.hpp"
#include "moritakit/tree.hpp"
#include "moritakit/verify.hpp"

using namespace moritakit;

namespace {

// pinned limits
constexpr double kMoritaSeconds = 60;
constexpr double kCauchySeconds = 60;
constexpr double kFinalitySeconds = 120;
constexpr double kVerifySeconds = 300;
constexpr size_t kMinFunctors = 200;
constexpr size_t kMinCategories = 100;
constexpr size_t kMinTriples = 100;
constexpr size_t kMinMaps = 100;
constexpr size_t kMinBarCases = 100;
constexpr size_t kMinJKInstances = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Timed {
  PropertyResult result;
  double seconds = 0;
};

// one property over the default corpus for seed 0, corpus construction included
Timed run_property(const std::string& name) {
  const auto t = Clock::now();
  VerifyConfig cfg;
  cfg.only = name;
  Timed r{verify_suite(cfg).results.at(0), 0};
  r.seconds = seconds_since(t);
  return r;
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

std::string counts(const PropertyResult& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.cases);
  if (r.skipped) s += ", " + std::to_string(r.skipped) + " skipped";
  if (!r.witness.empty()) s += ", witness " + r.witness;
  return s;
}

bool all_pass(const PropertyResult& r, size_t min_cases) { return r.failed == 0 && r.skipped == 0 && r.cases >= min_cases; }

int failures = 0;

void report(int n, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = body();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " | " << detail << std::endl;
}

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  FILE* p = popen((std::string(MORITAKIT_CLI_PATH) + " " + args).c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main() {
  report(1, "Morita verdict agrees with Karoubi equivalence on >= 200 functors in < 60s", [] {
    const Timed t = run_property("morita-karoubi");
    return std::pair{all_pass(t.result, kMinFunctors) && t.seconds < kMoritaSeconds, counts(t.result) + " agree in " + fmt(t.seconds)};
  });

  report(2, "Cauchy complete <=> RLP against iota <=> iota-local on >= 100 categories in < 60s", [] {
    const Timed t = run_property("cauchy-triple");
    return std::pair{all_pass(t.result, kMinCategories) && t.seconds < kCauchySeconds, counts(t.result) + " agree in " + fmt(t.seconds)};
  });

  report(3, "golden objects: Karoubi(Idem) ~ Split, Ret counts, nerve(Split), rho injective", [] {
    const Karoubi k = karoubi_envelope(standard_category_ptr("Idem"));
    bool equivalent = false;
    for (const auto& f : enumerate_functors(k.category, standard_category_ptr("Split"), 1000)) equivalent = equivalent || is_equivalence(f);
    const auto ret = nondegenerate_counts(*build_ret(4).ret.object);
    const auto split = level_sizes(nerve(standard_category("Split"), 2));
    bool injective = true;
    for (int d = 2; d <= 4; ++d) injective = injective && is_mono(build_ret(d).rho);
    const bool ok = equivalent && k.category->num_morphisms() == 5 && ret == std::vector<int>{2, 2, 1, 0, 0} &&
                    split == std::vector<int>{2, 5, 13} && injective;
    std::ostringstream d;
    d << "Karoubi(Idem) " << k.category->num_morphisms() << " morphisms, equivalent " << equivalent << "; Ret (";
    for (size_t i = 0; i < ret.size(); ++i) d << (i ? "," : "") << ret[i];
    d << "); nerve(Split) (";
    for (size_t i = 0; i < split.size(); ++i) d << (i ? "," : "") << split[i];
    d << "); rho injective " << injective;
    return std::pair{ok, d.str()};
  });

  report(4, "finality formula matches the comma colimit on >= 100 triples in < 120s", [] {
    const Timed t = run_property("finality");
    auto b = standard_operad("B");
    const int a = b->colour("a"), bb = b->colour("b");
    const size_t one = clone_hom(*b, {a}, bb, true).size(), two = clone_hom(*b, {a, a}, bb, true).size();
    const bool ok = all_pass(t.result, kMinTriples) && t.seconds < kFinalitySeconds && one == 1 && two == 3;
    return std::pair{ok, counts(t.result) + " in " + fmt(t.seconds) + "; B(a;b) = " + std::to_string(one) + ", B(a,a;b) = " + std::to_string(two)};
  });

  report(5, "f fully faithful <=> T(f) bijective on hom components, >= 100 maps", [] {
    const Timed t = run_property("ff-transfer");
    return std::pair{all_pass(t.result, kMinMaps), counts(t.result)};
  });

  report(6, "retract lemma in both directions over the corpus", [] {
    const Timed t = run_property("retract-transfer");
    std::string notes;
    for (const auto& n : t.result.notes) notes += "; " + n;
    return std::pair{all_pass(t.result, 1), counts(t.result) + notes};
  });

  report(7, "Morita equivalences induce bijections on algebra classes (carriers <= 3)", [] {
    const Timed t = run_property("algebra-shadow");
    const size_t b = all_algebras(*standard_operad("B"), {2, 2}).size();
    std::string summary;
    for (const auto& n : t.result.notes)
      if (n.find("equivalences;") != std::string::npos) summary = n;
    return std::pair{all_pass(t.result, 2) && b == 8, counts(t.result) + "; B(2,2) algebras " + std::to_string(b) + "; " + summary};
  });

  report(8, "pi0 of the bar construction equals the coend on >= 100 triples at level 4", [] {
    const Timed t = run_property("bar-kan");
    const Functor iota = iota_functor();
    const int collapsed = compare_pi0(iota, representable_module(iota.source, 0), iota.target->object("1"), 4);
    return std::pair{all_pass(t.result, kMinBarCases + 1) && collapsed == 1, counts(t.result) + "; iota/h0/d=1 gives " + std::to_string(collapsed)};
  });

  report(9, "J/K homotopies and delta on >= 10 theory instances at levels <= 2, words <= 4", [] {
    const Timed t = run_property("jk-homotopy");
    auto b = standard_operad("B");
    JKConfig cfg{identity_operad_map(b), all_algebras(*b, {2, 2})[5], {b->colour("a")}, {b->colour("b")}};
    cfg.levels = 2;
    cfg.word_bound = 4;
    const JKReport first = verify_homotopy_jk(cfg);
    std::mt19937_64 rng(11);
    cfg.rng = &rng;
    const JKReport again = verify_homotopy_jk(cfg);
    const bool ok = all_pass(t.result, kMinJKInstances) && first.ok() && again.ok() && again.pi0_source == first.pi0_source;
    return std::pair{ok, counts(t.result) + "; T(B) (2,2): " + std::to_string(first.checks) + " identities, pi0 " + std::to_string(first.pi0_source) + "/" +
                             std::to_string(first.pi0_target) + ", rerun " + (again.ok() ? "agrees" : "differs")};
  });

  report(10, "N_d(O) at linear(n) matches nerve(j*(O)) for n <= 3; N_d(Omega(C2)) at C2 has 2", [] {
    const Timed t = run_property("dendroidal-linear");
    const size_t c2 = dendroidal_nerve_at(*standard_operad("Omega(corolla(2))"), standard_tree("corolla(2)")).size();
    return std::pair{all_pass(t.result, 4) && c2 == 2, counts(t.result) + "; corolla count " + std::to_string(c2)};
  });

  report(11, "verify --seed 0 is byte-identical across runs, each < 300s", [] {
    auto t = Clock::now();
    const Run a = cli("verify --seed 0");
    const double s1 = seconds_since(t);
    t = Clock::now();
    const Run b = cli("verify --seed 0");
    const double s2 = seconds_since(t);
    const bool ok = a.code == 0 && b.code == 0 && a.out == b.out && !a.out.empty() && s1 < kVerifySeconds && s2 < kVerifySeconds;
    return std::pair{ok, std::string("exit ") + std::to_string(a.code) + "/" + std::to_string(b.code) + ", " + (a.out == b.out ? "identical" : "different") +
                             " (" + std::to_string(a.out.size()) + " bytes), " + fmt(s1) + " and " + fmt(s2)};
  });

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : std::string("acceptance: all criteria passed")) << std::endl;
  return failures ? 1 : 0;
}
