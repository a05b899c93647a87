#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "moritakit/bar.hpp"
#include "moritakit/error.hpp"
#include "moritakit/io.hpp"
#include "moritakit/theory.hpp"
#include "moritakit/verify.hpp"

using namespace moritakit;

namespace {

std::string dir_of(const std::string& path) {
  const auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

// a path or a standard name
CatPtr load_category(const std::string& arg) { return category_ref(Json(arg), "."); }
OperadPtr load_operad(const std::string& arg) { return operad_ref(Json(arg), "."); }

Functor load_functor(const std::string& path) { return functor_from_json(read_json_file(path), dir_of(path)); }
OperadMap load_operad_map(const std::string& path) { return operad_map_from_json(read_json_file(path), dir_of(path)); }

Tree load_tree(const std::string& arg) {
  if (arg.find(".json") != std::string::npos || arg.find('/') != std::string::npos) {
    Tree t = tree_from_json(read_json_file(arg));
    validate_tree(t);
    return t;
  }
  return standard_tree(arg);
}

Word parse_word(const SymOperad& o, const std::string& s) {
  Word w;
  std::stringstream in(s);
  std::string c;
  while (std::getline(in, c, ','))
    if (!c.empty()) w.push_back(o.colour(c));
  return w;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  std::stringstream in(s);
  std::string x;
  while (std::getline(in, x, ',')) {
    try {
      v.push_back(std::stoi(x));
    } catch (const std::exception&) {
      fail(ErrorKind::BadParameters, "expected integers, got " + s);
    }
  }
  return v;
}

Json word_json(const SymOperad& o, const Word& w) {
  Json j = Json::array();
  for (int c : w) j.push_back(o.colour_id(c));
  return j;
}

// {"source": [...], "target": [...], "components": [{"map": [...], "op": id}]}
TheoryArrow arrow_from_json(const SymOperad& o, const Json& j) {
  TheoryArrow a;
  try {
    for (const auto& c : j.at("source")) a.source.push_back(o.colour(c.get<std::string>()));
    for (const auto& c : j.at("target")) a.target.push_back(o.colour(c.get<std::string>()));
    for (const auto& k : j.at("components")) a.components.push_back({k.at("map").get<std::vector<int>>(), o.op(k.at("op").get<std::string>())});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Malformed, std::string("theory arrow: ") + e.what());
  }
  if (a.components.size() != a.target.size()) fail(ErrorKind::Malformed, "one component per target colour expected");
  for (size_t i = 0; i < a.components.size(); ++i) {
    TheoryClass& k = a.components[i];
    if (o.output(k.op) != a.target[i] || k.map.size() != o.inputs(k.op).size()) fail(ErrorKind::Malformed, "component " + std::to_string(i) + " has the wrong signature");
    for (size_t t = 0; t < k.map.size(); ++t)
      if (k.map[t] < 0 || k.map[t] >= static_cast<int>(a.source.size()) || a.source[static_cast<size_t>(k.map[t])] != o.inputs(k.op)[t])
        fail(ErrorKind::Malformed, "component " + std::to_string(i) + " reads the wrong colour");
    k = class_of_term(o, k.map, k.op);
  }
  return a;
}

Json arrow_json(const SymOperad& o, const TheoryArrow& a) {
  Json j{{"source", word_json(o, a.source)}, {"target", word_json(o, a.target)}, {"components", Json::array()}, {"term", arrow_string(o, a)}};
  for (const auto& k : a.components) j["components"].push_back({{"map", k.map}, {"op", o.op_id(k.op)}});
  return j;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Json report_json(const MoritaReport& r, const std::function<std::string(int)>& object, const std::function<std::string(int)>& source_object,
                 const std::function<std::string(int)>& arrow) {
  Json j{{"ff", r.fully_faithful},
         {"essentially_surjective", r.essentially_surjective},
         {"retracts", r.essentially_surjective_up_to_retracts},
         {"verdict", r.verdict},
         {"oracle", "agree"}};
  if (r.ff_failure) j["ff_failure"] = {source_object(r.ff_failure->first), source_object(r.ff_failure->second)};
  j["witnesses"] = Json::array();
  for (const auto& w : r.witnesses) {
    Json x{{"object", object(w.target_object)}};
    auto triple = [&](const Triple& t) { return Json{{"source", source_object(t.source_object)}, {"r", arrow(t.r)}, {"i", arrow(t.i)}}; };
    if (w.retract) x["retract"] = triple(*w.retract);
    if (w.iso) x["iso"] = triple(*w.iso);
    j["witnesses"].push_back(x);
  }
  return j;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"Finite Morita theory: categories, operads, theories and bar constructions"};
  app.require_subcommand(1);

  std::string file, other, at, source, target, colour, tree, carrier, module_file, algebra_file, a_word, b_word, bounds, only, map_file;
  int dim = 3, levels = 2, words = 4, length = 3, bound = 2;
  std::uint64_t seed = 0;
  bool json = false, oracle = false, compare = false, iso = false, corrupt = false, list = false;

  auto* validate = app.add_subcommand("validate", "validate a category, functor, operad, operad map, tree, simplicial set, algebra or module");
  validate->add_option("file", file, "JSON document")->required();
  validate->add_option("--operad", other, "operad of an algebra document");
  validate->add_option("--category", at, "category of a module document");

  auto* karoubi = app.add_subcommand("karoubi", "Karoubi envelope of a category");
  karoubi->add_option("category", file, "JSON file or standard name")->required();
  karoubi->add_flag("--json", json, "print the envelope as JSON");

  auto* cauchy = app.add_subcommand("cauchy-operad", "Cauchy completion of an operad");
  cauchy->add_option("operad", file, "JSON file or standard name")->required();
  cauchy->add_flag("--json", json, "print the completion as JSON");

  auto* morita = app.add_subcommand("morita", "decide Morita equivalence of a functor (cat) or operad map (operad)");
  std::string which;
  morita->add_option("kind", which, "cat or operad")->required()->check(CLI::IsMember({"cat", "operad"}));
  morita->add_option("file", file, "functor or operad map JSON")->required();

  auto* nerve_cmd = app.add_subcommand("nerve", "truncated nerve of a category");
  nerve_cmd->add_option("category", file, "JSON file or standard name")->required();
  nerve_cmd->add_option("--dim", dim, "truncation dimension")->check(CLI::Range(0, 8));
  nerve_cmd->add_flag("--json", json, "print the simplicial set as JSON");

  auto* ret = app.add_subcommand("ret", "the pushout Ret and the map rho into the nerve of Split");
  ret->add_option("--dim", dim, "truncation dimension")->check(CLI::Range(2, 8));

  auto* hom = app.add_subcommand("theory-hom", "hom set of the theory of an operad");
  hom->add_option("operad", file, "JSON file or standard name")->required();
  hom->add_option("--source", source, "comma-separated colours")->required();
  hom->add_option("--target", target, "comma-separated colours")->required();
  hom->add_flag("--oracle", oracle, "cross-check against the comma-category colimit");

  auto* compose = app.add_subcommand("compose", "compose two arrows of the theory of an operad");
  compose->add_option("operad", file, "JSON file or standard name")->required();
  compose->add_option("--first", other, "arrow g (JSON file)")->required();
  compose->add_option("--second", at, "arrow h (JSON file)")->required();

  auto* retract = app.add_subcommand("retract-search", "retract witnesses for a colour");
  retract->add_option("operad", file, "JSON file or standard name")->required();
  retract->add_option("--colour", colour, "colour")->required();
  retract->add_option("--length", length, "longest word searched")->check(CLI::Range(1, 6));

  auto* dendroidal = app.add_subcommand("dendroidal-nerve", "dendrices of an operad at a tree");
  dendroidal->add_option("operad", file, "JSON file or standard name")->required();
  dendroidal->add_option("--tree", tree, "tree JSON file or eta, corolla(n), linear(n)")->required();
  dendroidal->add_flag("--list", list, "list the dendrices");

  auto* algebras = app.add_subcommand("algebras", "finite algebras of an operad");
  algebras->add_option("operad", file, "JSON file or standard name")->required();
  algebras->add_option("--carrier", carrier, "carrier sizes per colour, comma-separated");
  algebras->add_option("--bound", bound, "carrier size bound when --carrier is absent")->check(CLI::Range(0, 4));
  algebras->add_flag("--iso", iso, "one algebra per isomorphism class");
  algebras->add_flag("--list", list, "list the algebras");

  auto* hokan = app.add_subcommand("hokan", "homotopy left Kan extension of a module along a functor");
  hokan->add_option("functor", file, "functor JSON")->required();
  hokan->add_option("--module", module_file, "module JSON; the point module when absent");
  hokan->add_option("--at", at, "object of the target")->required();
  hokan->add_option("--levels", levels, "levels built")->check(CLI::Range(0, 6));
  hokan->add_flag("--compare-pi0", compare, "compare pi0 with the coend");

  auto* jk = app.add_subcommand("verify-jk", "check the maps psi, sigma, phi, delta and the homotopies J, K");
  jk->add_option("operad", file, "JSON file or standard name")->required();
  jk->add_option("--algebra", algebra_file, "algebra JSON")->required();
  jk->add_option("--map", map_file, "operad map out of the operad; the identity when absent");
  jk->add_option("--a", a_word, "word of the target")->required();
  jk->add_option("--b", b_word, "word of the target")->required();
  jk->add_option("--levels", levels, "simplicial levels checked")->check(CLI::Range(0, 4));
  jk->add_option("--words", words, "word length bound")->check(CLI::Range(0, 8));
  jk->add_option("--seed", seed, "rerun with random representatives drawn from this seed");

  auto* verify = app.add_subcommand("verify", "randomized verification suite");
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--bounds", bounds, "k=v,... overriding corpus bounds");
  verify->add_option("--only", only, "run one property");
  verify->add_flag("--json", json, "JSON report");
  verify->add_flag("--inject-corrupt", corrupt, "add a corrupted operad fixture");
  verify->add_flag("--list", list, "list the properties and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (validate->parsed()) {
    const Json j = read_json_file(file);
    std::string kind = detect_kind(j);
    if (kind.empty() && j.is_object() && j.contains("carrier")) kind = "algebra";
    if (kind.empty() && j.is_object() && j.contains("value")) kind = "module";
    const std::string base = dir_of(file);
    std::string what;
    if (kind == "category") {
      what = describe_category(validate_category(category_from_json(j)));
    } else if (kind == "functor") {
      const Functor f = functor_from_json(j, base);
      what = "from " + describe_category(*f.source) + " to " + describe_category(*f.target);
    } else if (kind == "operad") {
      const SymOperad o = validate_operad(operad_from_json(j));
      what = std::to_string(o.num_colours()) + " colours, " + std::to_string(o.num_ops()) + " operations";
    } else if (kind == "operad_map") {
      const OperadMap f = operad_map_from_json(j, base);
      validate_operad_map(f);
      what = std::to_string(f.source->num_ops()) + " operations mapped";
    } else if (kind == "tree") {
      const Tree t = tree_from_json(j);
      validate_tree(t);
      what = std::to_string(t.vertices.size()) + " vertices, " + std::to_string(tree_leaves(t).size()) + " leaves";
    } else if (kind == "sset") {
      const TruncSSet s = sset_from_json(j);
      validate_sset(s);
      what = "level sizes " + join(level_sizes(s));
    } else if (kind == "algebra") {
      if (other.empty()) fail(ErrorKind::BadParameters, "an algebra needs --operad");
      const OperadPtr o = load_operad(other);
      const FiniteAlgebra a = algebra_from_json(j, *o);
      what = "carriers " + join(a.carrier);
    } else if (kind == "module") {
      if (at.empty()) fail(ErrorKind::BadParameters, "a module needs --category");
      const CModule x = module_from_json(j, load_category(at));
      what = "values " + join(x.value);
    } else {
      fail(ErrorKind::Malformed, "unrecognised document " + file);
    }
    std::cout << "valid " << kind << ": " << what << "\n";
    return 0;
  }

  if (karoubi->parsed()) {
    const Karoubi k = karoubi_envelope(load_category(file));
    if (json) {
      print(category_to_json(*k.category));
    } else {
      std::cout << describe_category(*k.category) << "\n";
      for (int x = 0; x < k.category->num_objects(); ++x) std::cout << "  " << k.category->object_id(x) << "\n";
      std::cout << "cauchy complete: " << (is_cauchy_complete(*k.category) ? "true" : "false") << "\n";
    }
    return 0;
  }

  if (cauchy->parsed()) {
    const OperadCauchy c = cauchy_completion_operad(load_operad(file));
    if (json) {
      print(operad_to_json(*c.operad));
    } else {
      std::cout << c.operad->num_colours() << " colours, " << c.operad->num_ops() << " operations\n";
      for (int x = 0; x < c.operad->num_colours(); ++x) std::cout << "  " << c.operad->colour_id(x) << "\n";
    }
    return 0;
  }

  if (morita->parsed()) {
    if (which == "cat") {
      const Functor f = load_functor(file);
      morita_cross_check(f);
      const MoritaReport r = morita_report(f);
      print(report_json(
          r, [&](int x) { return f.target->object_id(x); }, [&](int x) { return f.source->object_id(x); },
          [&](int m) { return f.target->morphism_id(m); }));
    } else {
      const OperadMap f = load_operad_map(file);
      const OperadMoritaReport r = morita_report_op(f);
      print(report_json(
          r.report, [&](int x) { return f.target->colour_id(x); }, [&](int x) { return f.source->colour_id(x); },
          [&](int o) { return f.target->op_id(o); }));
    }
    return 0;
  }

  if (nerve_cmd->parsed()) {
    const TruncSSet n = nerve(*load_category(file), dim);
    if (json) {
      print(sset_to_json(n));
    } else {
      std::cout << "levels " << join(level_sizes(n)) << "\n";
      std::cout << "nondegenerate " << join(nondegenerate_counts(n)) << "\n";
    }
    return 0;
  }

  if (ret->parsed()) {
    const RetConstruction r = build_ret(dim);
    std::cout << "levels " << join(level_sizes(*r.ret.object)) << "\n";
    std::cout << "nondegenerate " << join(nondegenerate_counts(*r.ret.object)) << "\n";
    std::cout << "rho injective " << (is_mono(r.rho) ? "true" : "false") << "\n";
    return 0;
  }

  if (hom->parsed()) {
    const OperadPtr o = load_operad(file);
    const Word c = parse_word(*o, source), d = parse_word(*o, target);
    if (d.size() == 1) {
      const auto classes = clone_hom(*o, c, d[0], oracle);
      std::cout << classes.size() << " classes\n";
      for (const auto& k : classes) std::cout << "  " << class_string(*o, c, k) << "\n";
    } else {
      if (oracle)
        for (int x : d) clone_hom(*o, c, x, true);
      const auto arrows = theory_hom(*o, c, d);
      std::cout << arrows.size() << " arrows\n";
      for (const auto& a : arrows) std::cout << "  " << arrow_string(*o, a) << "\n";
    }
    return 0;
  }

  if (compose->parsed()) {
    const OperadPtr o = load_operad(file);
    const TheoryArrow g = arrow_from_json(*o, read_json_file(other)), h = arrow_from_json(*o, read_json_file(at));
    if (g.target != h.source) fail(ErrorKind::BadParameters, "the target of the first arrow is not the source of the second");
    print(arrow_json(*o, compose_theory(*o, h, g)));
    return 0;
  }

  if (retract->parsed()) {
    const OperadPtr o = load_operad(file);
    const int c = o->colour(colour);
    Json j{{"colour", colour}, {"colour_retracts", Json::array()}};
    for (int d = 0; d < o->num_colours(); ++d)
      if (const auto w = colour_retract_witness(*o, c, d)) j["colour_retracts"].push_back({{"of", o->colour_id(d)}, {"r", o->op_id(w->first)}, {"i", o->op_id(w->second)}});
    if (const auto t = is_retract_in_theory(*o, c, length))
      j["theory_retract"] = {{"word", word_json(*o, t->word)}, {"r", arrow_json(*o, t->r)}, {"i", arrow_json(*o, t->i)}};
    else
      j["theory_retract"] = nullptr;
    print(j);
    return 0;
  }

  if (dendroidal->parsed()) {
    const OperadPtr o = load_operad(file);
    const Tree t = load_tree(tree);
    const auto ds = dendroidal_nerve_at(*o, t);
    std::cout << ds.size() << " dendrices\n";
    if (list)
      for (const auto& d : ds) {
        std::cout << " ";
        for (size_t v = 0; v < t.vertices.size(); ++v) std::cout << " " << t.vertices[v].output << "=" << o->op_id(d.vertex_ops[v]);
        if (t.vertices.empty()) std::cout << " " << o->colour_id(d.colouring[0]);
        std::cout << "\n";
      }
    return 0;
  }

  if (algebras->parsed()) {
    const OperadPtr o = load_operad(file);
    std::vector<FiniteAlgebra> as;
    if (!carrier.empty()) {
      const auto sizes = parse_ints(carrier);
      if (static_cast<int>(sizes.size()) != o->num_colours()) fail(ErrorKind::BadParameters, "one carrier size per colour expected");
      as = all_algebras(*o, sizes);
      if (iso) {
        std::vector<FiniteAlgebra> reps;
        std::vector<std::vector<int>> seen;
        for (const auto& a : as) {
          auto f = canonical_form(*o, a);
          if (std::find(seen.begin(), seen.end(), f) == seen.end()) {
            seen.push_back(std::move(f));
            reps.push_back(a);
          }
        }
        as = std::move(reps);
      }
    } else {
      as = enumerate_algebras_bounded(*o, bound, iso);
    }
    std::cout << as.size() << (iso ? " isomorphism classes\n" : " algebras\n");
    if (list)
      for (const auto& a : as) std::cout << "  " << algebra_to_json(a, *o).dump() << "\n";
    return 0;
  }

  if (hokan->parsed()) {
    const Functor f = load_functor(file);
    const CModule x = module_file.empty() ? point_module(f.source) : module_from_json(read_json_file(module_file), f.source);
    const int d = f.target->object(at);
    const TruncSSet s = ho_kan_extension(f, x, d, levels);
    int count = 0;
    component_labels(s, count);
    std::cout << "levels " << join(level_sizes(s)) << "\n";
    std::cout << "pi0 " << count << "\n";
    if (compare) std::cout << "coend " << compare_pi0(f, x, d, std::max(levels, 1)) << " (agree)\n";
    return 0;
  }

  if (jk->parsed()) {
    const OperadPtr o = load_operad(file);
    JKConfig cfg;
    cfg.f = map_file.empty() ? identity_operad_map(o) : load_operad_map(map_file);
    if (cfg.f.source->to_data().colours != o->to_data().colours || cfg.f.source->num_ops() != o->num_ops())
      fail(ErrorKind::BadParameters, "the map does not start at the operad");
    cfg.algebra = algebra_from_json(read_json_file(algebra_file), *o);
    cfg.a = parse_word(*cfg.f.target, a_word);
    cfg.b = parse_word(*cfg.f.target, b_word);
    cfg.levels = levels;
    cfg.word_bound = words;
    std::mt19937_64 rng(seed);
    if (jk->count("--seed")) cfg.rng = &rng;
    const JKReport r = verify_homotopy_jk(cfg);
    print(Json{{"single_cells", r.single_cells},
               {"pair_cells", r.pair_cells},
               {"checks", r.checks},
               {"psi_simplicial", r.psi_simplicial},
               {"sigma_simplicial", r.sigma_simplicial},
               {"phi_simplicial", r.phi_simplicial},
               {"delta_simplicial", r.delta_simplicial},
               {"j_homotopy", r.j_homotopy},
               {"k_homotopy", r.k_homotopy},
               {"delta_pi0_bijective", r.delta_pi0_bijective},
               {"pi0_source", r.pi0_source},
               {"pi0_target", r.pi0_target},
               {"failure", r.failure}});
    return r.ok() ? 0 : 2;
  }

  if (verify->parsed()) {
    if (list) {
      for (const auto& p : property_registry()) std::cout << p.name << " [" << p.module << "] " << p.statement << "\n";
      return 0;
    }
    VerifyConfig cfg;
    cfg.seed = seed;
    parse_bounds(bounds, cfg.bounds);
    cfg.only = only;
    cfg.inject_corrupt = corrupt;
    const VerifySummary s = verify_suite(cfg);
    if (json)
      print(summary_json(s));
    else
      std::cout << summary_text(s);
    return s.ok() ? 0 : 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
