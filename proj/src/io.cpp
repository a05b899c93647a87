#include "moritakit/io.hpp"

#include <filesystem>
#include <fstream>

#include "moritakit/error.hpp"

namespace moritakit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Malformed, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorKind::Malformed, std::string(what) + " must be a string");
  return j.get<std::string>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorKind::Malformed, std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Malformed, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(str(x, what));
  return out;
}

std::vector<int> ints(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Malformed, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(integer(x, what));
  return out;
}

std::map<std::string, std::string> string_map(const Json& j, const char* what) {
  if (!j.is_object()) fail(ErrorKind::Malformed, std::string(what) + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str(v, what);
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? path : (std::filesystem::path(base_dir) / p).string();
}

bool looks_like_file(const std::string& s) { return s.find(".json") != std::string::npos || s.find('/') != std::string::npos; }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Malformed, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Malformed, path + ": " + e.what());
  }
}

std::string detect_kind(const Json& j) {
  if (!j.is_object()) return "";
  if (j.contains("obj_map")) return "functor";
  if (j.contains("colour_map")) return "operad_map";
  if (j.contains("morphisms")) return "category";
  if (j.contains("colours")) return "operad";
  if (j.contains("edges")) return "tree";
  if (j.contains("levels") && j.contains("faces")) return "sset";
  return "";
}

CategoryData category_from_json(const Json& j) {
  CategoryData d;
  d.objects = strings(field(j, "objects"), "objects");
  const Json& ms = field(j, "morphisms");
  if (!ms.is_array()) fail(ErrorKind::Malformed, "morphisms must be an array");
  for (const auto& m : ms) d.morphisms.push_back({str(field(m, "id"), "morphism id"), str(field(m, "dom"), "dom"), str(field(m, "cod"), "cod")});
  if (j.contains("identities")) d.identities = string_map(j.at("identities"), "identities");
  if (j.contains("compose")) {
    if (!j.at("compose").is_array()) fail(ErrorKind::Malformed, "compose must be an array");
    for (const auto& e : j.at("compose")) {
      const auto t = strings(e, "compose entry");
      if (t.size() != 3) fail(ErrorKind::Malformed, "compose entries are [g, f, g∘f]");
      d.compose.push_back({t[0], t[1], t[2]});
    }
  }
  return d;
}

Json category_to_json(const FinCategory& c) {
  const CategoryData d = c.to_data();
  Json j;
  j["objects"] = d.objects;
  j["morphisms"] = Json::array();
  for (const auto& m : d.morphisms) j["morphisms"].push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
  j["identities"] = d.identities;
  j["compose"] = Json::array();
  for (const auto& e : d.compose) j["compose"].push_back({e[0], e[1], e[2]});
  return j;
}

CatPtr category_ref(const Json& j, const std::string& base_dir) {
  if (j.is_object()) return make_category(category_from_json(j));
  const std::string s = str(j, "category reference");
  if (looks_like_file(s)) {
    const std::string path = resolve(base_dir, s);
    return make_category(category_from_json(read_json_file(path)));
  }
  return standard_category_ptr(s);
}

OperadPtr operad_ref(const Json& j, const std::string& base_dir) {
  if (j.is_object()) return make_operad(operad_from_json(j));
  const std::string s = str(j, "operad reference");
  if (looks_like_file(s)) return make_operad(operad_from_json(read_json_file(resolve(base_dir, s))));
  return standard_operad(s);
}

Functor functor_from_json(const Json& j, const std::string& base_dir) {
  Functor f;
  f.source = category_ref(field(j, "source"), base_dir);
  f.target = category_ref(field(j, "target"), base_dir);
  f.obj_map.assign(static_cast<size_t>(f.source->num_objects()), -1);
  f.mor_map.assign(static_cast<size_t>(f.source->num_morphisms()), -1);
  for (const auto& [k, v] : string_map(field(j, "obj_map"), "obj_map")) f.obj_map[static_cast<size_t>(f.source->object(k))] = f.target->object(v);
  for (const auto& [k, v] : string_map(field(j, "mor_map"), "mor_map")) f.mor_map[static_cast<size_t>(f.source->morphism(k))] = f.target->morphism(v);
  for (int x = 0; x < f.source->num_objects(); ++x)
    if (f.obj_map[static_cast<size_t>(x)] < 0) fail(ErrorKind::Malformed, "obj_map misses " + f.source->object_id(x));
  // identities may be left implicit
  for (int m = 0; m < f.source->num_morphisms(); ++m)
    if (f.mor_map[static_cast<size_t>(m)] < 0) {
      if (!f.source->is_identity(m)) fail(ErrorKind::Malformed, "mor_map misses " + f.source->morphism_id(m));
      f.mor_map[static_cast<size_t>(m)] = f.target->identity(f.on_object(f.source->dom(m)));
    }
  validate_functor(f);
  return f;
}

Json functor_to_json(const Functor& f) {
  Json j;
  j["source"] = category_to_json(*f.source);
  j["target"] = category_to_json(*f.target);
  j["obj_map"] = Json::object();
  j["mor_map"] = Json::object();
  for (int x = 0; x < f.source->num_objects(); ++x) j["obj_map"][f.source->object_id(x)] = f.target->object_id(f.on_object(x));
  for (int m = 0; m < f.source->num_morphisms(); ++m) j["mor_map"][f.source->morphism_id(m)] = f.target->morphism_id(f(m));
  return j;
}

OperadData operad_from_json(const Json& j) {
  OperadData d;
  d.colours = strings(field(j, "colours"), "colours");
  const Json& ops = field(j, "ops");
  if (!ops.is_array()) fail(ErrorKind::Malformed, "ops must be an array");
  for (const auto& o : ops) d.ops.push_back({str(field(o, "id"), "op id"), strings(field(o, "inputs"), "inputs"), str(field(o, "output"), "output")});
  if (j.contains("action")) {
    if (!j.at("action").is_array()) fail(ErrorKind::Malformed, "action must be an array");
    for (const auto& a : j.at("action")) d.action.push_back({str(field(a, "op"), "op"), ints(field(a, "perm"), "perm"), str(field(a, "result"), "result")});
  }
  if (j.contains("compose")) {
    if (!j.at("compose").is_array()) fail(ErrorKind::Malformed, "compose must be an array");
    for (const auto& c : j.at("compose"))
      d.compose.push_back({str(field(c, "outer"), "outer"), strings(field(c, "inners"), "inners"), str(field(c, "result"), "result")});
  }
  if (j.contains("identities")) d.identities = string_map(j.at("identities"), "identities");
  return d;
}

Json operad_to_json(const SymOperad& o) {
  const OperadData d = o.to_data();
  Json j;
  j["colours"] = d.colours;
  j["ops"] = Json::array();
  for (const auto& op : d.ops) j["ops"].push_back({{"id", op.id}, {"inputs", op.inputs}, {"output", op.output}});
  j["action"] = Json::array();
  for (const auto& a : d.action) j["action"].push_back({{"op", a.op}, {"perm", a.perm}, {"result", a.result}});
  j["compose"] = Json::array();
  for (const auto& c : d.compose) j["compose"].push_back({{"outer", c.outer}, {"inners", c.inners}, {"result", c.result}});
  j["identities"] = d.identities;
  return j;
}

OperadMap operad_map_from_json(const Json& j, const std::string& base_dir) {
  OperadMap f;
  f.source = operad_ref(field(j, "source"), base_dir);
  f.target = operad_ref(field(j, "target"), base_dir);
  f.colour_map.assign(static_cast<size_t>(f.source->num_colours()), -1);
  f.op_map.assign(static_cast<size_t>(f.source->num_ops()), -1);
  for (const auto& [k, v] : string_map(field(j, "colour_map"), "colour_map")) f.colour_map[static_cast<size_t>(f.source->colour(k))] = f.target->colour(v);
  for (const auto& [k, v] : string_map(field(j, "op_map"), "op_map")) f.op_map[static_cast<size_t>(f.source->op(k))] = f.target->op(v);
  for (int c = 0; c < f.source->num_colours(); ++c)
    if (f.colour_map[static_cast<size_t>(c)] < 0) fail(ErrorKind::Malformed, "colour_map misses " + f.source->colour_id(c));
  for (int o = 0; o < f.source->num_ops(); ++o)
    if (f.op_map[static_cast<size_t>(o)] < 0) {
      if (!f.source->is_identity(o)) fail(ErrorKind::Malformed, "op_map misses " + f.source->op_id(o));
      f.op_map[static_cast<size_t>(o)] = f.target->identity(f.on_colour(f.source->output(o)));
    }
  validate_operad_map(f);
  return f;
}

Json operad_map_to_json(const OperadMap& f) {
  Json j;
  j["source"] = operad_to_json(*f.source);
  j["target"] = operad_to_json(*f.target);
  j["colour_map"] = Json::object();
  j["op_map"] = Json::object();
  for (int c = 0; c < f.source->num_colours(); ++c) j["colour_map"][f.source->colour_id(c)] = f.target->colour_id(f.on_colour(c));
  for (int o = 0; o < f.source->num_ops(); ++o) j["op_map"][f.source->op_id(o)] = f.target->op_id(f(o));
  return j;
}

Tree tree_from_json(const Json& j) {
  Tree t;
  t.edges = strings(field(j, "edges"), "edges");
  t.root = str(field(j, "root"), "root");
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) fail(ErrorKind::Malformed, "vertices must be an array");
  for (const auto& v : vs) t.vertices.push_back({strings(field(v, "inputs"), "inputs"), str(field(v, "output"), "output")});
  validate_tree(t);
  return t;
}

Json tree_to_json(const Tree& t) {
  Json j;
  j["edges"] = t.edges;
  j["root"] = t.root;
  j["vertices"] = Json::array();
  for (const auto& v : t.vertices) j["vertices"].push_back({{"inputs", v.inputs}, {"output", v.output}});
  return j;
}

FiniteAlgebra algebra_from_json(const Json& j, const SymOperad& o) {
  FiniteAlgebra a;
  a.carrier.assign(static_cast<size_t>(o.num_colours()), -1);
  a.act.resize(static_cast<size_t>(o.num_ops()));
  const Json& carrier = field(j, "carrier");
  if (!carrier.is_object()) fail(ErrorKind::Malformed, "carrier must be an object");
  for (const auto& [k, v] : carrier.items()) a.carrier[static_cast<size_t>(o.colour(k))] = integer(v, "carrier size");
  for (int c = 0; c < o.num_colours(); ++c)
    if (a.carrier[static_cast<size_t>(c)] < 0) fail(ErrorKind::Malformed, "carrier misses " + o.colour_id(c));
  const Json& act = field(j, "act");
  if (!act.is_object()) fail(ErrorKind::Malformed, "act must be an object");
  std::vector<bool> seen(static_cast<size_t>(o.num_ops()), false);
  for (const auto& [k, v] : act.items()) {
    const int op = o.op(k);
    a.act[static_cast<size_t>(op)] = ints(v, "act table");
    seen[static_cast<size_t>(op)] = true;
  }
  for (int op = 0; op < o.num_ops(); ++op)
    if (!seen[static_cast<size_t>(op)]) {
      if (!o.is_identity(op)) fail(ErrorKind::Malformed, "act misses " + o.op_id(op));
      std::vector<int>& t = a.act[static_cast<size_t>(op)];
      for (int e = 0; e < a.carrier[static_cast<size_t>(o.output(op))]; ++e) t.push_back(e);
    }
  validate_algebra(o, a);
  return a;
}

Json algebra_to_json(const FiniteAlgebra& a, const SymOperad& o) {
  Json j;
  j["carrier"] = Json::object();
  j["act"] = Json::object();
  for (int c = 0; c < o.num_colours(); ++c) j["carrier"][o.colour_id(c)] = a.carrier[static_cast<size_t>(c)];
  for (int op = 0; op < o.num_ops(); ++op) j["act"][o.op_id(op)] = a.act[static_cast<size_t>(op)];
  return j;
}

CModule module_from_json(const Json& j, const CatPtr& c) {
  CModule x{c, std::vector<int>(static_cast<size_t>(c->num_objects()), -1), std::vector<std::vector<int>>(static_cast<size_t>(c->num_morphisms()))};
  const Json& value = field(j, "value");
  if (!value.is_object()) fail(ErrorKind::Malformed, "value must be an object");
  for (const auto& [k, v] : value.items()) x.value[static_cast<size_t>(c->object(k))] = integer(v, "value size");
  for (int o = 0; o < c->num_objects(); ++o)
    if (x.value[static_cast<size_t>(o)] < 0) fail(ErrorKind::Malformed, "value misses " + c->object_id(o));
  std::vector<bool> seen(static_cast<size_t>(c->num_morphisms()), false);
  if (j.contains("action")) {
    if (!j.at("action").is_object()) fail(ErrorKind::Malformed, "action must be an object");
    for (const auto& [k, v] : j.at("action").items()) {
      const int m = c->morphism(k);
      x.action[static_cast<size_t>(m)] = ints(v, "action table");
      seen[static_cast<size_t>(m)] = true;
    }
  }
  for (int m = 0; m < c->num_morphisms(); ++m)
    if (!seen[static_cast<size_t>(m)]) {
      if (!c->is_identity(m)) fail(ErrorKind::Malformed, "action misses " + c->morphism_id(m));
      for (int e = 0; e < x.value[static_cast<size_t>(c->dom(m))]; ++e) x.action[static_cast<size_t>(m)].push_back(e);
    }
  validate_module(x);
  return x;
}

Json module_to_json(const CModule& x) {
  Json j;
  j["value"] = Json::object();
  j["action"] = Json::object();
  for (int o = 0; o < x.base->num_objects(); ++o) j["value"][x.base->object_id(o)] = x.value[static_cast<size_t>(o)];
  for (int m = 0; m < x.base->num_morphisms(); ++m) j["action"][x.base->morphism_id(m)] = x.action[static_cast<size_t>(m)];
  return j;
}

TruncSSet sset_from_json(const Json& j) {
  const int dim = integer(field(j, "dim"), "dim");
  if (dim < 0) fail(ErrorKind::Malformed, "dim must be non-negative");
  const Json& levels = field(j, "levels");
  if (!levels.is_array() || static_cast<int>(levels.size()) != dim + 1) fail(ErrorKind::Malformed, "levels must list dim + 1 levels");
  TruncSSet s(dim);
  for (int n = 0; n <= dim; ++n)
    for (const auto& id : strings(levels[static_cast<size_t>(n)], "simplex ids")) s.add(n, id);
  auto read = [&](const char* key, bool faces) {
    const Json& table = field(j, key);
    for (int n = faces ? 1 : 0; n <= (faces ? dim : dim - 1); ++n)
      for (int k = 0; k <= n; ++k) {
        const std::string name = std::to_string(n) + "," + std::to_string(k);
        const auto m = string_map(field(table, name.c_str()), key);
        for (int x = 0; x < s.size(n); ++x) {
          auto it = m.find(s.id(n, x));
          if (it == m.end()) fail(ErrorKind::Malformed, std::string(key) + " " + name + " misses " + s.id(n, x));
          const int y = s.find(faces ? n - 1 : n + 1, it->second);
          if (y < 0) fail(ErrorKind::UnknownName, "unknown simplex " + it->second);
          if (faces) {
            s.set_face(n, k, x, y);
          } else {
            s.set_degen(n, k, x, y);
          }
        }
      }
  };
  read("faces", true);
  read("degens", false);
  return s;
}

Json sset_to_json(const TruncSSet& s) {
  Json j;
  j["dim"] = s.dim();
  j["levels"] = Json::array();
  for (int n = 0; n <= s.dim(); ++n) {
    Json level = Json::array();
    for (int x = 0; x < s.size(n); ++x) level.push_back(s.id(n, x));
    j["levels"].push_back(level);
  }
  j["faces"] = Json::object();
  j["degens"] = Json::object();
  for (int n = 0; n <= s.dim(); ++n)
    for (int k = 0; k <= n; ++k) {
      const std::string name = std::to_string(n) + "," + std::to_string(k);
      if (n >= 1) {
        Json m = Json::object();
        for (int x = 0; x < s.size(n); ++x) m[s.id(n, x)] = s.id(n - 1, s.face(n, k, x));
        j["faces"][name] = m;
      }
      if (n < s.dim()) {
        Json m = Json::object();
        for (int x = 0; x < s.size(n); ++x) m[s.id(n, x)] = s.id(n + 1, s.degen(n, k, x));
        j["degens"][name] = m;
      }
    }
  return j;
}

}  // namespace moritakit
