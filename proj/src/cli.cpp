// Workspace (de)serialization, report plumbing, and the command dispatcher
// behind the hvdc command-line driver. Everything here is deterministic:
// maps iterate sorted, documents are emitted in a fixed section order, and
// re-running a stored command reproduces its report bit-exactly.
#include "hvdc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "hvdc/construct.hpp"
#include "hvdc/kan.hpp"
#include "hvdc/util.hpp"

namespace hvdc {
namespace {

using njson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& why) { throw InputError(why); }

// ---------------------------------------------------------------------------
// Key encodings
// ---------------------------------------------------------------------------

/// Splits "left<sep>right" at the first occurrence of sep.
std::pair<std::string, std::string> split_once(const std::string& key, const std::string& sep,
                                               const std::string& where) {
  const auto at = key.find(sep);
  if (at == std::string::npos) {
    bad(where + ": key '" + key + "' lacks the separator '" + sep + "'");
  }
  return {key.substr(0, at), key.substr(at + sep.size())};
}

std::string tuple_key(const Key& k) { return join(k, ","); }

Key split_tuple(const std::string& key) {
  Key out;
  if (key.empty()) return out;
  std::size_t from = 0;
  while (true) {
    const auto at = key.find(',', from);
    if (at == std::string::npos) {
      out.push_back(key.substr(from));
      break;
    }
    out.push_back(key.substr(from, at - from));
    from = at + 1;
  }
  return out;
}

std::string shape_key(const Shape& s) {
  std::vector<std::string> parts;
  parts.reserve(s.size());
  for (std::size_t n : s) parts.push_back(std::to_string(n));
  return join(parts, ",");
}

Shape shape_from(const std::string& text, const std::string& where) {
  Shape s;
  for (const std::string& part : split_tuple(text)) {
    try {
      s.push_back(std::stoul(part));
    } catch (const std::exception&) {
      bad(where + ": shape entry '" + part + "' is not a number");
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON field access
// ---------------------------------------------------------------------------

const njson& field(const njson& j, const std::string& name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) bad(where + ": missing field '" + name + "'");
  return j.at(name);
}

std::vector<Atom> atom_list(const njson& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array of atoms");
  return j.get<std::vector<Atom>>();
}

std::map<Atom, Atom> atom_table(const njson& j, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object of atom pairs");
  return j.get<std::map<Atom, Atom>>();
}

// ---------------------------------------------------------------------------
// Named references (workspace documents store entry names, not copies)
// ---------------------------------------------------------------------------

template <class T>
const T& resolve(const std::map<std::string, T>& table, const std::string& name,
                 const std::string& what, const std::string& where) {
  auto it = table.find(name);
  if (it == table.end()) bad(where + ": dangling reference to " + what + " '" + name + "'");
  return it->second;
}

/// Inverse lookup used by save: an embedded object must equal a named entry.
template <class T>
const std::string& name_of(const std::map<std::string, T>& table, const T& value,
                           const std::string& what) {
  for (const auto& [name, entry] : table) {
    if (entry == value) return name;
  }
  bad("cannot serialize: " + what + " is not a named workspace entry");
}

// ---------------------------------------------------------------------------
// Section serializers (named form, used inside workspace documents)
// ---------------------------------------------------------------------------

njson category_json(const FinCategory& c) {
  njson j = njson::object();
  j["objects"] = c.objects.elems;
  njson hom = njson::object();
  for (const auto& [xy, fs] : c.hom) hom[xy.first + "→" + xy.second] = fs.elems;
  j["hom"] = std::move(hom);
  njson id = njson::object();
  for (const auto& [x, m] : c.identity) id[x] = m;
  j["id"] = std::move(id);
  njson comp = njson::object();
  for (const auto& [gf, h] : c.comp) comp[gf.first + "∘" + gf.second] = h;
  j["comp"] = std::move(comp);
  return j;
}

FinCategory category_from(const njson& j, const std::string& where) {
  FinSet objects(atom_list(field(j, "objects", where), where + "/objects"));
  std::map<AtomPair, FinSet> hom;
  for (const auto& [key, val] : field(j, "hom", where).items()) {
    auto [x, y] = split_once(key, "→", where + "/hom");
    hom[{x, y}] = FinSet(atom_list(val, where + "/hom"));
  }
  std::map<Atom, Atom> identity = atom_table(field(j, "id", where), where + "/id");
  std::map<AtomPair, Atom> comp;
  for (const auto& [key, val] : field(j, "comp", where).items()) {
    auto [g, f] = split_once(key, "∘", where + "/comp");
    comp[{g, f}] = val.get<Atom>();
  }
  return FinCategory::build(std::move(objects), std::move(hom), std::move(identity),
                            std::move(comp));
}

njson functor_json(const FinFunctor& f, const Workspace& ws) {
  njson j = njson::object();
  j["source"] = name_of(ws.categories, f.source, "a functor's source");
  j["target"] = name_of(ws.categories, f.target, "a functor's target");
  j["ob"] = f.obj_map;
  j["mor"] = f.mor_map;
  return j;
}

FinFunctor functor_from(const njson& j, const Workspace& ws, const std::string& where) {
  FinFunctor f;
  f.source = resolve(ws.categories, field(j, "source", where).get<std::string>(), "category",
                     where);
  f.target = resolve(ws.categories, field(j, "target", where).get<std::string>(), "category",
                     where);
  f.obj_map = atom_table(field(j, "ob", where), where + "/ob");
  f.mor_map = atom_table(field(j, "mor", where), where + "/mor");
  return f;
}

njson transformation_json(const NatTransformation& t, const Workspace& ws) {
  njson j = njson::object();
  j["source"] = name_of(ws.functors, t.source, "a transformation's source");
  j["target"] = name_of(ws.functors, t.target, "a transformation's target");
  j["components"] = t.components;
  return j;
}

NatTransformation transformation_from(const njson& j, const Workspace& ws,
                                      const std::string& where) {
  NatTransformation t;
  t.source = resolve(ws.functors, field(j, "source", where).get<std::string>(), "functor", where);
  t.target = resolve(ws.functors, field(j, "target", where).get<std::string>(), "functor", where);
  t.components = atom_table(field(j, "components", where), where + "/components");
  return t;
}

njson fiber_table_json(const std::map<AtomPair, FinSet>& elems) {
  njson out = njson::object();
  for (const auto& [xy, fs] : elems) out[xy.first + "→" + xy.second] = fs.elems;
  return out;
}

njson action_json(const std::map<AtomPair, Atom>& action) {
  njson out = njson::object();
  for (const auto& [au, v] : action) out[au.first + "·" + au.second] = v;
  return out;
}

std::map<AtomPair, Atom> action_from(const njson& j, const std::string& where) {
  std::map<AtomPair, Atom> out;
  for (const auto& [key, val] : j.items()) {
    auto [a, u] = split_once(key, "·", where);
    out[{a, u}] = val.get<Atom>();
  }
  return out;
}

njson profunctor_json(const Profunctor& p, const Workspace& ws) {
  njson j = njson::object();
  j["source"] = name_of(ws.categories, p.source, "a profunctor's source");
  j["target"] = name_of(ws.categories, p.target, "a profunctor's target");
  j["elems"] = fiber_table_json(p.elems);
  j["lact"] = action_json(p.lact);
  j["ract"] = action_json(p.ract);
  return j;
}

Profunctor profunctor_from(const njson& j, const Workspace& ws, const std::string& where) {
  FinCategory source =
      resolve(ws.categories, field(j, "source", where).get<std::string>(), "category", where);
  FinCategory target =
      resolve(ws.categories, field(j, "target", where).get<std::string>(), "category", where);
  std::map<AtomPair, FinSet> elems;
  for (const auto& [key, val] : field(j, "elems", where).items()) {
    auto [x, y] = split_once(key, "→", where + "/elems");
    elems[{x, y}] = FinSet(atom_list(val, where + "/elems"));
  }
  return Profunctor::build(std::move(source), std::move(target), std::move(elems),
                           action_from(field(j, "lact", where), where + "/lact"),
                           action_from(field(j, "ract", where), where + "/ract"));
}

njson presheaf_json(const Presheaf& p, const Workspace& ws) {
  njson j = njson::object();
  j["base"] = name_of(ws.categories, p.base, "a presheaf's base");
  njson values = njson::object();
  for (const Atom& x : p.base.objects) {
    auto it = p.values.find(x);
    values[x] = it == p.values.end() ? std::vector<Atom>{} : it->second.elems;
  }
  j["values"] = std::move(values);
  j["action"] = action_json(p.action);
  return j;
}

Presheaf presheaf_from(const njson& j, const Workspace& ws, const std::string& where) {
  Presheaf p;
  p.base = resolve(ws.categories, field(j, "base", where).get<std::string>(), "category", where);
  for (const auto& [x, val] : field(j, "values", where).items()) {
    p.values[x] = FinSet(atom_list(val, where + "/values"));
  }
  for (const Atom& x : p.base.objects) {
    if (!p.values.count(x)) p.values[x] = FinSet{};
  }
  p.action = action_from(field(j, "action", where), where + "/action");
  return p;
}

njson components_json(const std::map<Key, Atom>& components) {
  njson out = njson::object();
  for (const auto& [k, v] : components) out[tuple_key(k)] = v;
  return out;
}

std::map<Key, Atom> components_from(const njson& j, [[maybe_unused]] const std::string& where) {
  std::map<Key, Atom> out;
  for (const auto& [key, val] : j.items()) out[split_tuple(key)] = val.get<Atom>();
  return out;
}

njson cell_json(const Cell& c, const Workspace& ws) {
  njson j = njson::object();
  j["left"] = name_of(ws.functors, c.frame.left, "a cell's left boundary");
  j["right"] = name_of(ws.functors, c.frame.right, "a cell's right boundary");
  njson src = njson::array();
  for (const Profunctor& p : c.frame.src_path) {
    src.push_back(name_of(ws.profunctors, p, "a cell's source leg"));
  }
  j["source"] = std::move(src);
  if (std::holds_alternative<Profunctor>(c.frame.target)) {
    j["target"] = name_of(ws.profunctors, c.frame.target_prof(), "a cell's target");
  } else {
    njson t = njson::object();
    t["category"] = name_of(ws.categories, c.frame.target_cat(), "a cell's target");
    j["target"] = std::move(t);
  }
  j["components"] = components_json(c.components);
  return j;
}

Cell cell_from(const njson& j, const Workspace& ws, const std::string& where) {
  Cell c;
  c.frame.left =
      resolve(ws.functors, field(j, "left", where).get<std::string>(), "functor", where);
  c.frame.right =
      resolve(ws.functors, field(j, "right", where).get<std::string>(), "functor", where);
  for (const njson& name : field(j, "source", where)) {
    c.frame.src_path.push_back(
        resolve(ws.profunctors, name.get<std::string>(), "profunctor", where));
  }
  const njson& target = field(j, "target", where);
  if (target.is_string()) {
    c.frame.target = resolve(ws.profunctors, target.get<std::string>(), "profunctor", where);
  } else {
    c.frame.target = resolve(
        ws.categories, field(target, "category", where + "/target").get<std::string>(),
        "category", where);
  }
  c.components = components_from(field(j, "components", where), where + "/components");
  return c;
}

njson monoidal_json(const MonoidalStructure& m, const Workspace& ws) {
  njson j = njson::object();
  j["base"] = name_of(ws.categories, m.base, "a monoidal structure's base");
  j["arity"] = m.arity_bound;
  njson tob = njson::array();
  for (const auto& table : m.tensor_obj) tob.push_back(components_json(table));
  j["tensor_obj"] = std::move(tob);
  njson tmor = njson::array();
  for (const auto& table : m.tensor_mor) tmor.push_back(components_json(table));
  j["tensor_mor"] = std::move(tmor);
  j["unitor"] = m.unitor;
  njson assoc = njson::object();
  for (const auto& [sk, v] : m.associator) {
    assoc[shape_key(sk.first) + "|" + tuple_key(sk.second)] = v;
  }
  j["associator"] = std::move(assoc);
  return j;
}

MonoidalStructure monoidal_from(const njson& j, const Workspace& ws, const std::string& where) {
  const FinCategory& base =
      resolve(ws.categories, field(j, "base", where).get<std::string>(), "category", where);
  const std::size_t arity = j.value("arity", std::size_t{3});
  if (j.contains("strict")) {
    const njson& s = j.at("strict");
    const Atom unit = field(s, "unit", where + "/strict").get<Atom>();
    const auto obj = components_from(field(s, "obj", where + "/strict"), where + "/strict/obj");
    const auto mor = components_from(field(s, "mor", where + "/strict"), where + "/strict/mor");
    auto lookup = [where](const std::map<Key, Atom>& table, const char* what) {
      return [&table, where, what](const Atom& a, const Atom& b) -> Atom {
        auto it = table.find(Key{a, b});
        if (it == table.end()) {
          bad(where + ": strict " + what + " table is missing the pair (" + a + ", " + b + ")");
        }
        return it->second;
      };
    };
    return strict_monoidal(base, unit, lookup(obj, "object"), lookup(mor, "morphism"), arity);
  }
  MonoidalStructure m;
  m.base = base;
  m.arity_bound = arity;
  for (const njson& table : field(j, "tensor_obj", where)) {
    m.tensor_obj.push_back(components_from(table, where + "/tensor_obj"));
  }
  for (const njson& table : field(j, "tensor_mor", where)) {
    m.tensor_mor.push_back(components_from(table, where + "/tensor_mor"));
  }
  m.unitor = atom_table(field(j, "unitor", where), where + "/unitor");
  for (const auto& [key, val] : field(j, "associator", where).items()) {
    auto [shape, leaves] = split_once(key, "|", where + "/associator");
    m.associator[{shape_from(shape, where + "/associator"), split_tuple(leaves)}] =
        val.get<Atom>();
  }
  return m;
}

std::string flavor_key(LaxMonoidalFunctor::Flavor f) {
  switch (f) {
    case LaxMonoidalFunctor::Flavor::lax: return "lax";
    case LaxMonoidalFunctor::Flavor::colax: return "colax";
    default: return "pseudo";
  }
}

LaxMonoidalFunctor::Flavor flavor_from(const std::string& text, const std::string& where) {
  if (text == "lax") return LaxMonoidalFunctor::Flavor::lax;
  if (text == "colax") return LaxMonoidalFunctor::Flavor::colax;
  if (text == "pseudo") return LaxMonoidalFunctor::Flavor::pseudo;
  bad(where + ": unknown flavor '" + text + "' (expected lax, colax, or pseudo)");
}

njson lax_json(const Workspace::LaxEntry& e, const Workspace& ws) {
  njson j = njson::object();
  j["functor"] = name_of(ws.functors, e.functor.underlying, "a lax functor's underlying functor");
  j["flavor"] = flavor_key(e.functor.flavor);
  j["source"] = e.source;
  j["target"] = e.target;
  j["compositors"] = components_json(e.functor.compositors);
  return j;
}

Workspace::LaxEntry lax_from(const njson& j, const Workspace& ws, const std::string& where) {
  Workspace::LaxEntry e;
  e.functor.underlying =
      resolve(ws.functors, field(j, "functor", where).get<std::string>(), "functor", where);
  e.functor.flavor = flavor_from(field(j, "flavor", where).get<std::string>(), where);
  e.functor.compositors =
      components_from(field(j, "compositors", where), where + "/compositors");
  e.source = field(j, "source", where).get<std::string>();
  e.target = field(j, "target", where).get<std::string>();
  resolve(ws.monoidal, e.source, "monoidal structure", where);
  resolve(ws.monoidal, e.target, "monoidal structure", where);
  return e;
}

njson monprof_json(const Workspace::MonProfEntry& e, const Workspace& ws) {
  njson j = njson::object();
  j["profunctor"] =
      name_of(ws.profunctors, e.profunctor.underlying, "a monoidal profunctor's underlying");
  j["source"] = e.source;
  j["target"] = e.target;
  j["structure"] = components_json(e.profunctor.structure);
  return j;
}

Workspace::MonProfEntry monprof_from(const njson& j, const Workspace& ws,
                                     const std::string& where) {
  Workspace::MonProfEntry e;
  e.profunctor.underlying =
      resolve(ws.profunctors, field(j, "profunctor", where).get<std::string>(), "profunctor",
              where);
  e.profunctor.structure = components_from(field(j, "structure", where), where + "/structure");
  e.source = field(j, "source", where).get<std::string>();
  e.target = field(j, "target", where).get<std::string>();
  resolve(ws.monoidal, e.source, "monoidal structure", where);
  resolve(ws.monoidal, e.target, "monoidal structure", where);
  return e;
}

njson context_json(const Workspace::ContextEntry& e) {
  njson j = njson::object();
  j["profunctors"] = e.profunctors;
  j["verticals"] = e.verticals;
  j["path_len"] = e.path_len;
  return j;
}

Workspace::ContextEntry context_from(const njson& j, const Workspace& ws,
                                     const std::string& where) {
  Workspace::ContextEntry e;
  for (const njson& name : field(j, "profunctors", where)) {
    e.profunctors.push_back(name.get<std::string>());
    resolve(ws.profunctors, e.profunctors.back(), "profunctor", where);
  }
  for (const njson& name : field(j, "verticals", where)) {
    e.verticals.push_back(name.get<std::string>());
    resolve(ws.functors, e.verticals.back(), "functor", where);
  }
  e.path_len = j.value("path_len", std::size_t{2});
  return e;
}

// ---------------------------------------------------------------------------
// Self-contained cell serialization (failure witnesses travel inside reports
// without needing the original workspace)
// ---------------------------------------------------------------------------

njson functor_inline(const FinFunctor& f) {
  njson j = njson::object();
  j["source"] = category_json(f.source);
  j["target"] = category_json(f.target);
  j["ob"] = f.obj_map;
  j["mor"] = f.mor_map;
  return j;
}

FinFunctor functor_from_inline(const njson& j, const std::string& where) {
  FinFunctor f;
  f.source = category_from(field(j, "source", where), where + "/source");
  f.target = category_from(field(j, "target", where), where + "/target");
  f.obj_map = atom_table(field(j, "ob", where), where + "/ob");
  f.mor_map = atom_table(field(j, "mor", where), where + "/mor");
  return f;
}

njson profunctor_inline(const Profunctor& p) {
  njson j = njson::object();
  j["source"] = category_json(p.source);
  j["target"] = category_json(p.target);
  j["elems"] = fiber_table_json(p.elems);
  j["lact"] = action_json(p.lact);
  j["ract"] = action_json(p.ract);
  return j;
}

Profunctor profunctor_from_inline(const njson& j, const std::string& where) {
  std::map<AtomPair, FinSet> elems;
  for (const auto& [key, val] : field(j, "elems", where).items()) {
    auto [x, y] = split_once(key, "→", where + "/elems");
    elems[{x, y}] = FinSet(atom_list(val, where + "/elems"));
  }
  return Profunctor::build(category_from(field(j, "source", where), where + "/source"),
                           category_from(field(j, "target", where), where + "/target"),
                           std::move(elems),
                           action_from(field(j, "lact", where), where + "/lact"),
                           action_from(field(j, "ract", where), where + "/ract"));
}

njson cell_inline(const Cell& c) {
  njson j = njson::object();
  j["left"] = functor_inline(c.frame.left);
  j["right"] = functor_inline(c.frame.right);
  njson src = njson::array();
  for (const Profunctor& p : c.frame.src_path) src.push_back(profunctor_inline(p));
  j["source"] = std::move(src);
  if (std::holds_alternative<Profunctor>(c.frame.target)) {
    j["target"] = profunctor_inline(c.frame.target_prof());
  } else {
    njson t = njson::object();
    t["category"] = category_json(c.frame.target_cat());
    j["target"] = std::move(t);
  }
  j["components"] = components_json(c.components);
  return j;
}

Cell cell_from_inline(const njson& j, const std::string& where) {
  Cell c;
  c.frame.left = functor_from_inline(field(j, "left", where), where + "/left");
  c.frame.right = functor_from_inline(field(j, "right", where), where + "/right");
  for (const njson& leg : field(j, "source", where)) {
    c.frame.src_path.push_back(profunctor_from_inline(leg, where + "/source"));
  }
  const njson& target = field(j, "target", where);
  if (target.contains("category")) {
    c.frame.target = category_from(target.at("category"), where + "/target");
  } else {
    c.frame.target = profunctor_from_inline(target, where + "/target");
  }
  c.components = components_from(field(j, "components", where), where + "/components");
  return c;
}

// ---------------------------------------------------------------------------
// Whole-workspace validation (shared by load and the validate command)
// ---------------------------------------------------------------------------

struct EntryReport {
  std::string where;  // "section/name"
  std::vector<std::string> report;
};

std::vector<std::string> dangling_names(const Workspace& ws,
                                        const Workspace::ContextEntry& e) {
  std::vector<std::string> out;
  for (const std::string& name : e.profunctors) {
    if (!ws.profunctors.count(name)) out.push_back("dangling profunctor '" + name + "'");
  }
  for (const std::string& name : e.verticals) {
    if (!ws.functors.count(name)) out.push_back("dangling functor '" + name + "'");
  }
  return out;
}

std::vector<EntryReport> validate_entries(const Workspace& ws) {
  std::vector<EntryReport> out;
  for (const auto& [name, c] : ws.categories) {
    out.push_back({"categories/" + name, validate_category(c)});
  }
  for (const auto& [name, f] : ws.functors) {
    out.push_back({"functors/" + name, validate_functor(f)});
  }
  for (const auto& [name, t] : ws.transformations) {
    out.push_back({"transformations/" + name, validate_nat_transformation(t)});
  }
  for (const auto& [name, p] : ws.profunctors) {
    out.push_back({"profunctors/" + name, validate_profunctor(p)});
  }
  for (const auto& [name, p] : ws.presheaves) {
    out.push_back({"presheaves/" + name, validate_presheaf(p)});
  }
  for (const auto& [name, c] : ws.cells) {
    out.push_back({"cells/" + name, validate_cell(c)});
  }
  for (const auto& [name, m] : ws.monoidal) {
    out.push_back({"monoidal/" + name, validate_monoidal(m)});
  }
  for (const auto& [name, e] : ws.lax_functors) {
    auto src = ws.monoidal.find(e.source);
    auto tgt = ws.monoidal.find(e.target);
    if (src == ws.monoidal.end() || tgt == ws.monoidal.end()) {
      out.push_back({"lax_functors/" + name, {"dangling monoidal structure reference"}});
    } else {
      out.push_back(
          {"lax_functors/" + name, validate_lax_functor(e.functor, src->second, tgt->second)});
    }
  }
  for (const auto& [name, e] : ws.monoidal_profunctors) {
    auto src = ws.monoidal.find(e.source);
    auto tgt = ws.monoidal.find(e.target);
    if (src == ws.monoidal.end() || tgt == ws.monoidal.end()) {
      out.push_back(
          {"monoidal_profunctors/" + name, {"dangling monoidal structure reference"}});
    } else {
      out.push_back({"monoidal_profunctors/" + name,
                     validate_monoidal_profunctor(e.profunctor, src->second, tgt->second)});
    }
  }
  for (const auto& [name, e] : ws.contexts) {
    out.push_back({"contexts/" + name, dangling_names(ws, e)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Command plumbing
// ---------------------------------------------------------------------------

template <class T>
const T& need(const std::map<std::string, T>& table, const std::string& name,
              const std::string& what) {
  auto it = table.find(name);
  if (it == table.end()) bad("no " + what + " named '" + name + "'");
  return it->second;
}

void expect(bool ok, const std::string& why) {
  if (!ok) bad("shape mismatch: " + why);
}

void exact_args(const std::vector<std::string>& args, std::size_t n, const std::string& usage) {
  if (args.size() != n) bad("usage: " + usage);
}

/// Builds the verification context: a named entry when requested, otherwise
/// every profunctor and functor in the workspace at path bound 2. An
/// explicit --path-len wins over either.
Context make_context(const Workspace& ws, const RunOptions& opt) {
  Context ctx;
  if (opt.ctx) {
    const Workspace::ContextEntry& e = need(ws.contexts, *opt.ctx, "context");
    for (const std::string& name : e.profunctors) {
      ctx.profunctors.push_back(need(ws.profunctors, name, "profunctor"));
    }
    for (const std::string& name : e.verticals) {
      ctx.verticals.push_back(need(ws.functors, name, "functor"));
    }
    ctx.max_path_len = e.path_len;
  } else {
    for (const auto& [name, p] : ws.profunctors) ctx.profunctors.push_back(p);
    for (const auto& [name, f] : ws.functors) ctx.verticals.push_back(f);
  }
  if (opt.path_len) ctx.max_path_len = *opt.path_len;
  return ctx;
}

/// Truncates a monoidal structure to a lower arity bound (tables above the
/// bound are dropped; the associator keeps only shapes that still fit).
MonoidalStructure with_arity(const MonoidalStructure& m, std::size_t n) {
  if (n > m.arity_bound) {
    bad("requested arity " + std::to_string(n) + " exceeds the structure's bound " +
        std::to_string(m.arity_bound));
  }
  MonoidalStructure out = m;
  out.arity_bound = n;
  out.tensor_obj.resize(n + 1);
  out.tensor_mor.resize(n + 1);
  for (auto it = out.associator.begin(); it != out.associator.end();) {
    const Shape& s = it->first.first;
    const std::size_t total = std::accumulate(s.begin(), s.end(), std::size_t{0});
    if (s.size() > n || total > n) {
      it = out.associator.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

MonoidalStructure monoidal_at(const Workspace& ws, const std::string& name,
                              const RunOptions& opt) {
  const MonoidalStructure& m = need(ws.monoidal, name, "monoidal structure");
  return opt.arity ? with_arity(m, *opt.arity) : m;
}

CheckResult exact_if(const std::vector<std::string>& report, const std::string& good) {
  return report.empty() ? CheckResult::exact(good) : CheckResult::failure(join(report, "; "));
}

CheckResult bounded_if(const std::vector<std::string>& report, const std::string& good) {
  return report.empty() ? CheckResult::bounded(good) : CheckResult::failure(join(report, "; "));
}

CheckResult exact_iff(bool ok, const std::string& good, const std::string& why) {
  return ok ? CheckResult::exact(good) : CheckResult::failure(why);
}

/// Mutually inverse presheaf maps, if any (searched over both hom-sets).
std::optional<std::pair<PresheafNat, PresheafNat>> find_presheaf_iso(const Presheaf& p,
                                                                     const Presheaf& q) {
  const PresheafHomSet forward = hom_presheaves(p, q);
  const PresheafHomSet backward = hom_presheaves(q, p);
  const PresheafNat idp = identity_presheaf_nat(p);
  const PresheafNat idq = identity_presheaf_nat(q);
  for (const PresheafNat& f : forward.transformations) {
    for (const PresheafNat& b : backward.transformations) {
      if (compose_presheaf_nat(b, f) == idp && compose_presheaf_nat(f, b) == idq) {
        return std::make_pair(f, b);
      }
    }
  }
  return std::nullopt;
}

njson presheaf_nat_json(const PresheafNat& t) {
  njson out = njson::object();
  for (const auto& [x, row] : t) out[x] = row;
  return out;
}

// ---------------------------------------------------------------------------
// The commands
// ---------------------------------------------------------------------------

void cmd_validate(Report& rep, const Workspace& ws, const std::vector<std::string>& args) {
  std::set<std::string> wanted(args.begin(), args.end());
  std::set<std::string> seen;
  for (const EntryReport& e : validate_entries(ws)) {
    const std::string bare = e.where.substr(e.where.find('/') + 1);
    if (!wanted.empty() && !wanted.count(bare)) continue;
    seen.insert(bare);
    rep.checks.push_back({e.where, exact_if(e.report, "valid")});
  }
  for (const std::string& name : wanted) {
    if (!seen.count(name)) bad("no entry named '" + name + "'");
  }
}

void cmd_compose(Report& rep, const Workspace& ws, const RunOptions& opt,
                 const std::vector<std::string>& args) {
  if (args.empty()) bad("usage: compose J1 [J2 ...]");
  std::vector<Profunctor> path;
  for (const std::string& name : args) path.push_back(need(ws.profunctors, name, "profunctor"));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    expect(path[i].target == path[i + 1].source,
           "'" + args[i] + "' ends at a different category than '" + args[i + 1] + "' starts");
  }
  const CompositeResult c = horizontal_composite(path);
  rep.checks.push_back({"composite-valid", exact_if(validate_profunctor(c.profunctor), "valid")});
  rep.checks.push_back(
      {"cocartesian", is_cocartesian_path({c.cocartesian_cell}, make_context(ws, opt))});
  rep.artifacts["fibers"] = fiber_table_json(c.profunctor.elems);
  njson classes = njson::object();
  for (const auto& [raw, cls] : c.class_map) classes[tuple_key(raw)] = cls;
  rep.artifacts["classes"] = std::move(classes);
}

void cmd_restrict(Report& rep, const Workspace& ws, const RunOptions& opt,
                  const std::vector<std::string>& args) {
  exact_args(args, 3, "restrict K f g");
  const Profunctor& k = need(ws.profunctors, args[0], "profunctor");
  const FinFunctor& f = need(ws.functors, args[1], "functor");
  const FinFunctor& g = need(ws.functors, args[2], "functor");
  expect(f.target == k.source, "'" + args[1] + "' does not land in the source of '" + args[0] +
                                   "'");
  expect(g.target == k.target, "'" + args[2] + "' does not land in the target of '" + args[0] +
                                   "'");
  const RestrictionResult r = restrict(k, f, g);
  rep.checks.push_back({"restriction-valid", exact_if(validate_profunctor(r.profunctor),
                                                      "valid")});
  rep.checks.push_back({"cartesian", is_cartesian(r.cartesian_cell, make_context(ws, opt))});
  rep.artifacts["fibers"] = fiber_table_json(r.profunctor.elems);
}

void cmd_companion(Report& rep, const Workspace& ws, const RunOptions& opt,
                   const std::vector<std::string>& args, bool conjoint_side) {
  exact_args(args, 1, conjoint_side ? "conjoint f" : "companion f");
  const FinFunctor& f = need(ws.functors, args[0], "functor");
  const CompanionResult c = conjoint_side ? conjoint(f) : companion(f);
  const Cell& cart = c.restriction.cartesian_cell;
  const Cell& cocart = c.cocartesian_cell;
  const Context ctx = make_context(ws, opt);
  rep.checks.push_back({"cartesian", is_cartesian(cart, ctx)});
  rep.checks.push_back({"cocartesian", is_weakly_cocartesian(cocart, ctx)});
  rep.checks.push_back(
      {"vertical-identity",
       exact_iff(vertical_compose(cart, {cocart}) == identity_vertical_cell(f),
                 "the cartesian-after-cocartesian paste is the identity on the functor",
                 "the cartesian-after-cocartesian paste is not the identity on the functor")});
  const Cell side = conjoint_side ? horizontal_compose(cart, cocart)
                                  : horizontal_compose(cocart, cart);
  rep.checks.push_back(
      {"horizontal-identity",
       exact_iff(side == identity_cell(c.restriction.profunctor),
                 "the side-by-side paste is the identity cell of the graph",
                 "the side-by-side paste is not the identity cell of the graph")});
  rep.artifacts["fibers"] = fiber_table_json(c.restriction.profunctor.elems);
}

void cmd_unit(Report& rep, const Workspace& ws, const RunOptions& opt,
              const std::vector<std::string>& args) {
  exact_args(args, 1, "unit A");
  const FinCategory& a = need(ws.categories, args[0], "category");
  const UnitResult u = unit_profunctor(a);
  const Context ctx = make_context(ws, opt);
  rep.checks.push_back({"cocartesian", is_cocartesian_path({u.cocartesian_cell}, ctx)});
  rep.checks.push_back({"cartesian", is_cartesian(u.cartesian_cell, ctx)});
  rep.checks.push_back(
      {"vertical-identity",
       exact_iff(vertical_compose(u.cartesian_cell, {u.cocartesian_cell}) ==
                     identity_vertical_cell(identity_functor(a)),
                 "the vertical paste is the identity on the identity functor",
                 "the vertical paste is not the identity on the identity functor")});
  const bool horizontals =
      horizontal_compose(u.cocartesian_cell, u.cartesian_cell) == identity_cell(u.profunctor) &&
      horizontal_compose(u.cartesian_cell, u.cocartesian_cell) == identity_cell(u.profunctor);
  rep.checks.push_back({"horizontal-identities",
                        exact_iff(horizontals, "both side-by-side pastes are the identity cell",
                                  "a side-by-side paste is not the identity cell")});
  rep.artifacts["fibers"] = fiber_table_json(u.profunctor.elems);
}

void cmd_tabulate(Report& rep, const Workspace& ws, const RunOptions& opt,
                  const std::vector<std::string>& args) {
  exact_args(args, 1, "tabulate J");
  const Profunctor& j = need(ws.profunctors, args[0], "profunctor");
  const TabulationResult t = tabulation(j);
  rep.checks.push_back({"category-valid", exact_if(validate_category(t.category), "valid")});
  std::vector<std::string> projections = validate_functor(t.proj_source);
  for (const std::string& line : validate_functor(t.proj_target)) projections.push_back(line);
  rep.checks.push_back({"projections-valid", exact_if(projections, "valid")});
  rep.checks.push_back({"projection-cell-valid", exact_if(validate_cell(t.projection), "valid")});
  std::set<Atom> covered;
  for (const auto& [obj, u] : t.object_elem) covered.insert(u);
  const std::vector<Atom> all = j.all_elems();
  const bool bijective = t.object_elem.size() == all.size() &&
                         covered == std::set<Atom>(all.begin(), all.end());
  rep.checks.push_back({"element-bijection",
                        exact_iff(bijective, "tabulation objects match the elements one-to-one",
                                  "tabulation objects do not match the elements one-to-one")});
  rep.checks.push_back(
      {"weakly-cocartesian", is_weakly_cocartesian(t.projection, make_context(ws, opt))});
  rep.artifacts["objects"] = t.category.objects.elems;
  rep.artifacts["object_elem"] = t.object_elem;
}

void cmd_cotabulate(Report& rep, const Workspace& ws, const RunOptions& opt,
                    const std::vector<std::string>& args) {
  exact_args(args, 1, "cotabulate J");
  const Profunctor& j = need(ws.profunctors, args[0], "profunctor");
  const CotabulationResult c = cotabulation(j);
  rep.checks.push_back({"category-valid", exact_if(validate_category(c.category), "valid")});
  std::vector<std::string> insertions = validate_functor(c.insert_source);
  for (const std::string& line : validate_functor(c.insert_target)) insertions.push_back(line);
  rep.checks.push_back({"insertions-valid", exact_if(insertions, "valid")});
  rep.checks.push_back({"cell-valid", exact_if(validate_cell(c.cell), "valid")});
  rep.checks.push_back({"cartesian", is_cartesian(c.cell, make_context(ws, opt))});
  rep.artifacts["objects"] = c.category.objects.elems;
}

void cmd_kan(Report& rep, const Workspace& ws, const RunOptions& opt,
             const std::vector<std::string>& args) {
  exact_args(args, 2, "kan d J");
  const FinFunctor& d = need(ws.functors, args[0], "functor");
  const Profunctor& j = need(ws.profunctors, args[1], "profunctor");
  expect(j.source == d.source, "'" + args[1] + "' does not start where '" + args[0] + "' does");
  const std::optional<KanWitness> w = pointwise_lan(d, j);
  if (!w) {
    rep.checks.push_back(
        {"pointwise-lan",
         CheckResult::failure("no pointwise left Kan extension exists (a weighted colimit is "
                              "missing)")});
    return;
  }
  rep.checks.push_back({"pointwise-lan", check_pointwise_lan(*w, make_context(ws, opt))});
  njson extension = njson::object();
  extension["ob"] = w->extension.obj_map;
  extension["mor"] = w->extension.mor_map;
  rep.artifacts["extension"] = std::move(extension);
  rep.artifacts["unit"] = components_json(w->cell.components);
}

void cmd_weighted_colim(Report& rep, const Workspace& ws,
                        const std::vector<std::string>& args) {
  exact_args(args, 2, "weighted-colim J d");
  const Weight w{need(ws.profunctors, args[0], "profunctor")};
  const FinFunctor& d = need(ws.functors, args[1], "functor");
  validate_weight(w);
  expect(w.profunctor.source == d.source,
         "'" + args[0] + "' does not start where '" + args[1] + "' does");
  const std::optional<ColimitResult> c = weighted_colimit(w, d);
  if (!c) {
    rep.checks.push_back({"colimit", CheckResult::failure("no weighted colimit exists")});
    return;
  }
  rep.checks.push_back({"colimit", is_weighted_colimit(w, d, c->cocone)});
  rep.artifacts["apex"] = c->apex;
  rep.artifacts["cocone"] = components_json(c->cocone.components);
}

void cmd_dense(Report& rep, const Workspace& ws, const RunOptions& opt,
               const std::vector<std::string>& args) {
  exact_args(args, 1, "dense f");
  rep.checks.push_back(
      {"dense", is_dense(need(ws.functors, args[0], "functor"), make_context(ws, opt))});
}

void cmd_yoneda_check(Report& rep, const Workspace& ws, const std::vector<std::string>& args) {
  if (args.empty()) bad("usage: yoneda-check A [p ...]");
  const FinCategory& a = need(ws.categories, args[0], "category");
  std::vector<std::pair<std::string, Presheaf>> presheaves;
  if (args.size() > 1) {
    for (std::size_t i = 1; i < args.size(); ++i) {
      const Presheaf& p = need(ws.presheaves, args[i], "presheaf");
      expect(p.base == a, "'" + args[i] + "' is not a presheaf on '" + args[0] + "'");
      presheaves.emplace_back(args[i], p);
    }
  } else {
    for (const auto& [name, p] : ws.presheaves) {
      if (p.base == a) presheaves.emplace_back(name, p);
    }
    if (presheaves.empty()) bad("no presheaves on category '" + args[0] + "' in the workspace");
  }
  njson sizes = njson::object();
  for (const auto& [name, p] : presheaves) {
    for (const Atom& x : a.objects) {
      const YonedaCheck yc = yoneda_lemma_check(a, p, x);
      rep.checks.push_back(
          {"yoneda:" + name + "@" + x, exact_if(yc.report, "bijective and natural")});
      sizes[name + "@" + x] = yc.bijection.size();
    }
  }
  rep.artifacts["sizes"] = std::move(sizes);
}

void cmd_curry(Report& rep, const Workspace& ws, const std::vector<std::string>& args) {
  exact_args(args, 1, "curry J");
  const CurryResult c = curry(need(ws.profunctors, args[0], "profunctor"));
  rep.checks.push_back(
      {"curry-exact",
       c.exact ? CheckResult::exact("the transpose is a functor into presheaves and every "
                                    "hom-set comparison is bijective")
               : CheckResult::failure("a hom-set comparison fails")});
  njson values = njson::object();
  for (const auto& [y, p] : c.obj_map) {
    njson row = njson::object();
    for (const auto& [x, fs] : p.values) row[x] = fs.size();
    values[y] = std::move(row);
  }
  rep.artifacts["values"] = std::move(values);
}

void cmd_day(Report& rep, const Workspace& ws, const RunOptions& opt,
             const std::vector<std::string>& args) {
  if (args.empty()) bad("usage: day M [p ...]");
  const MonoidalStructure m = monoidal_at(ws, args[0], opt);
  std::vector<Presheaf> ps;
  for (std::size_t i = 1; i < args.size(); ++i) {
    ps.push_back(need(ws.presheaves, args[i], "presheaf"));
  }
  const Presheaf conv = day_convolution(m, ps, ps.size());
  rep.checks.push_back({"convolution-valid", exact_if(validate_presheaf(conv), "valid")});
  njson values = njson::object();
  for (const auto& [x, fs] : conv.values) values[x] = fs.size();
  rep.artifacts["values"] = std::move(values);

  // When every factor is a representable, the convolution must collapse to
  // the representable of the tensor; report the iso explicitly.
  Key xs;
  bool representable = true;
  for (const Presheaf& p : ps) {
    bool found = false;
    for (const Atom& x : m.base.objects) {
      if (p == yoneda_object(m.base, x)) {
        xs.push_back(x);
        found = true;
        break;
      }
    }
    if (!found) {
      representable = false;
      break;
    }
  }
  if (!representable) return;
  const Presheaf target = yoneda_object(m.base, m.tensor_of(xs));
  const auto iso = find_presheaf_iso(conv, target);
  rep.checks.push_back(
      {"representable-collapse",
       iso ? CheckResult::exact("isomorphic to the representable of the tensor")
           : CheckResult::failure("no isomorphism to the representable of the tensor found")});
  if (iso) {
    rep.artifacts["collapse_to"] = m.tensor_of(xs);
    rep.artifacts["forward"] = presheaf_nat_json(iso->first);
    rep.artifacts["backward"] = presheaf_nat_json(iso->second);
  }
}

void cmd_monoidal_yoneda(Report& rep, const Workspace& ws, const RunOptions& opt,
                         const std::vector<std::string>& args) {
  exact_args(args, 1, "monoidal-yoneda M");
  const MonoidalStructure m = monoidal_at(ws, args[0], opt);
  const MonoidalYonedaStructure y = yoneda_monoidal_structure(m);
  rep.checks.push_back(
      {"monoidal-yoneda",
       bounded_if(y.report,
                  "verified at arity bound " + std::to_string(m.arity_bound))});
  njson sizes = njson::object();
  for (const auto& [xs, conv] : y.convolution) {
    std::size_t total = 0;
    for (const auto& [x, fs] : conv.values) total += fs.size();
    sizes[tuple_key(xs)] = total;
  }
  rep.artifacts["convolution_sizes"] = std::move(sizes);
}

void cmd_bc_check(Report& rep, const Workspace& ws, const RunOptions& opt,
                  const std::vector<std::string>& args) {
  exact_args(args, 1, "bc-check J");
  const Workspace::MonProfEntry& e = need(ws.monoidal_profunctors, args[0],
                                          "monoidal profunctor");
  const MonoidalStructure src = monoidal_at(ws, e.source, opt);
  const MonoidalStructure tgt = monoidal_at(ws, e.target, opt);
  const CheckResult bc = monoidal_beck_chevalley(e.profunctor, src, tgt);
  const MonoidalCurryResult mc = monoidal_curry(e.profunctor, src, tgt);
  rep.checks.push_back({"beck-chevalley", bc});
  rep.checks.push_back({"compositors-coherent",
                        bounded_if(mc.report, "coherent at every bounded shape")});
  rep.checks.push_back(
      {"equivalence",
       exact_iff(bc.ok() == mc.all_invertible,
                 bc.ok() ? "holds and every transpose compositor is invertible"
                         : "fails and some transpose compositor is not invertible",
                 "the Beck-Chevalley verdict disagrees with compositor invertibility")});
  njson invertible = njson::object();
  for (const auto& [ys, flag] : mc.invertible) invertible[tuple_key(ys)] = flag;
  rep.artifacts["invertible"] = std::move(invertible);
}

void cmd_doctrinal(Report& rep, const Workspace& ws, const RunOptions& opt,
                   const std::vector<std::string>& args) {
  exact_args(args, 4, "doctrinal f g unit counit");
  const Workspace::LaxEntry& fe = need(ws.lax_functors, args[0], "lax functor");
  const FinFunctor& g = need(ws.functors, args[1], "functor");
  const NatTransformation& unit = need(ws.transformations, args[2], "transformation");
  const NatTransformation& counit = need(ws.transformations, args[3], "transformation");
  const MonoidalStructure src = monoidal_at(ws, fe.source, opt);
  const MonoidalStructure tgt = monoidal_at(ws, fe.target, opt);
  const DoctrinalResult r = doctrinal_right_adjoint(fe.functor, g, unit, counit, src, tgt);
  rep.checks.push_back(
      {"doctrinal",
       bounded_if(r.report, "the mate structure validates and unit/counit are monoidal")});
  rep.artifacts["flavor"] = flavor_key(r.right.flavor);
  rep.artifacts["compositors"] = components_json(r.right.compositors);
}

void cmd_lift_kan(Report& rep, const Workspace& ws, const RunOptions& opt,
                  const std::vector<std::string>& args) {
  exact_args(args, 2, "lift-kan d J");
  const Workspace::LaxEntry& de = need(ws.lax_functors, args[0], "lax functor");
  const Workspace::MonProfEntry& je = need(ws.monoidal_profunctors, args[1],
                                           "monoidal profunctor");
  expect(de.source == je.source,
         "'" + args[0] + "' and '" + args[1] + "' start at different monoidal structures");
  const MonoidalStructure src = monoidal_at(ws, de.source, opt);
  const MonoidalStructure mid = monoidal_at(ws, je.target, opt);
  const MonoidalStructure tgt = monoidal_at(ws, de.target, opt);
  const std::optional<KanWitness> w =
      pointwise_lan(de.functor.underlying, je.profunctor.underlying);
  if (!w) {
    rep.checks.push_back(
        {"pointwise-lan", CheckResult::failure("no pointwise left Kan extension exists")});
    return;
  }
  const KanLiftResult r = lift_lax_structure_on_kan(de.functor, je.profunctor, *w, src, mid,
                                                    tgt, make_context(ws, opt));
  rep.checks.push_back({"preservation", r.preservation});
  rep.checks.push_back(
      {"coherence", r.lifted ? bounded_if(r.report, "the lifted structure validates")
                             : CheckResult::failure("no structure lifted")});
  if (r.lifted) {
    rep.artifacts["flavor"] = flavor_key(r.lifted->flavor);
    rep.artifacts["compositors"] = components_json(r.lifted->compositors);
    rep.artifacts["extension"] = w->extension.obj_map;
  }
}

void cmd_check_cartesian(Report& rep, const Workspace& ws, const RunOptions& opt,
                         const std::vector<std::string>& args) {
  exact_args(args, 1, "check-cartesian C");
  rep.checks.push_back(
      {"cartesian", is_cartesian(need(ws.cells, args[0], "cell"), make_context(ws, opt))});
}

void cmd_check_cocartesian(Report& rep, const Workspace& ws, const RunOptions& opt,
                           const std::vector<std::string>& args) {
  if (args.empty()) bad("usage: check-cocartesian C1 [C2 ...]");
  std::vector<Cell> cells;
  for (const std::string& name : args) cells.push_back(need(ws.cells, name, "cell"));
  rep.checks.push_back({"cocartesian", is_cocartesian_path(cells, make_context(ws, opt))});
}

void cmd_check_pointwise(Report& rep, const Workspace& ws, const RunOptions& opt,
                         const std::vector<std::string>& args) {
  exact_args(args, 1, "check-pointwise C");
  rep.checks.push_back(
      {"pointwise-cocartesian",
       is_pointwise_cocartesian(need(ws.cells, args[0], "cell"), make_context(ws, opt))});
}

void dispatch(Report& rep, const Workspace& ws, const RunOptions& opt,
              const std::string& command, const std::vector<std::string>& args) {
  if (command == "validate") return cmd_validate(rep, ws, args);
  if (command == "compose") return cmd_compose(rep, ws, opt, args);
  if (command == "restrict") return cmd_restrict(rep, ws, opt, args);
  if (command == "companion") return cmd_companion(rep, ws, opt, args, false);
  if (command == "conjoint") return cmd_companion(rep, ws, opt, args, true);
  if (command == "unit") return cmd_unit(rep, ws, opt, args);
  if (command == "tabulate") return cmd_tabulate(rep, ws, opt, args);
  if (command == "cotabulate") return cmd_cotabulate(rep, ws, opt, args);
  if (command == "kan") return cmd_kan(rep, ws, opt, args);
  if (command == "weighted-colim") return cmd_weighted_colim(rep, ws, args);
  if (command == "dense") return cmd_dense(rep, ws, opt, args);
  if (command == "yoneda-check") return cmd_yoneda_check(rep, ws, args);
  if (command == "curry") return cmd_curry(rep, ws, args);
  if (command == "day") return cmd_day(rep, ws, opt, args);
  if (command == "monoidal-yoneda") return cmd_monoidal_yoneda(rep, ws, opt, args);
  if (command == "bc-check") return cmd_bc_check(rep, ws, opt, args);
  if (command == "doctrinal") return cmd_doctrinal(rep, ws, opt, args);
  if (command == "lift-kan") return cmd_lift_kan(rep, ws, opt, args);
  if (command == "check-cartesian") return cmd_check_cartesian(rep, ws, opt, args);
  if (command == "check-cocartesian") return cmd_check_cocartesian(rep, ws, opt, args);
  if (command == "check-pointwise") return cmd_check_pointwise(rep, ws, opt, args);
  bad("unknown command '" + command + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Workspace load/save
// ---------------------------------------------------------------------------

Workspace parse_workspace(const std::string& text, const std::string& provenance) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::exception& e) {
    bad(provenance + ": parse error: " + e.what());
  }
  if (!j.is_object() || !j.contains("hvdc") || j.at("hvdc") != 1) {
    bad(provenance + ": not an hvdc document (expected a top-level {\"hvdc\": 1})");
  }
  static const std::set<std::string> known{
      "hvdc",      "categories", "functors",     "transformations",
      "profunctors", "presheaves", "cells",      "monoidal",
      "lax_functors", "monoidal_profunctors",    "contexts"};
  for (const auto& [key, val] : j.items()) {
    if (!known.count(key)) bad(provenance + ": unknown section '" + key + "'");
  }

  Workspace ws;
  auto note = [&ws, &provenance](const std::string& where) {
    ws.provenance[where] = provenance;
  };
  try {
    if (j.contains("categories")) {
      for (const auto& [name, val] : j.at("categories").items()) {
        ws.categories[name] = category_from(val, "categories/" + name);
        note("categories/" + name);
      }
    }
    if (j.contains("functors")) {
      for (const auto& [name, val] : j.at("functors").items()) {
        ws.functors[name] = functor_from(val, ws, "functors/" + name);
        note("functors/" + name);
      }
    }
    if (j.contains("transformations")) {
      for (const auto& [name, val] : j.at("transformations").items()) {
        ws.transformations[name] = transformation_from(val, ws, "transformations/" + name);
        note("transformations/" + name);
      }
    }
    if (j.contains("profunctors")) {
      for (const auto& [name, val] : j.at("profunctors").items()) {
        ws.profunctors[name] = profunctor_from(val, ws, "profunctors/" + name);
        note("profunctors/" + name);
      }
    }
    if (j.contains("presheaves")) {
      for (const auto& [name, val] : j.at("presheaves").items()) {
        ws.presheaves[name] = presheaf_from(val, ws, "presheaves/" + name);
        note("presheaves/" + name);
      }
    }
    if (j.contains("cells")) {
      for (const auto& [name, val] : j.at("cells").items()) {
        ws.cells[name] = cell_from(val, ws, "cells/" + name);
        note("cells/" + name);
      }
    }
    if (j.contains("monoidal")) {
      for (const auto& [name, val] : j.at("monoidal").items()) {
        ws.monoidal[name] = monoidal_from(val, ws, "monoidal/" + name);
        note("monoidal/" + name);
      }
    }
    if (j.contains("lax_functors")) {
      for (const auto& [name, val] : j.at("lax_functors").items()) {
        ws.lax_functors[name] = lax_from(val, ws, "lax_functors/" + name);
        note("lax_functors/" + name);
      }
    }
    if (j.contains("monoidal_profunctors")) {
      for (const auto& [name, val] : j.at("monoidal_profunctors").items()) {
        ws.monoidal_profunctors[name] = monprof_from(val, ws, "monoidal_profunctors/" + name);
        note("monoidal_profunctors/" + name);
      }
    }
    if (j.contains("contexts")) {
      for (const auto& [name, val] : j.at("contexts").items()) {
        ws.contexts[name] = context_from(val, ws, "contexts/" + name);
        note("contexts/" + name);
      }
    }
  } catch (const njson::exception& e) {
    bad(provenance + ": parse error: " + e.what());
  }

  std::vector<std::string> violations;
  for (const EntryReport& e : validate_entries(ws)) {
    for (const std::string& line : e.report) violations.push_back(e.where + ": " + line);
  }
  if (!violations.empty()) {
    bad(provenance + ": validation failed:\n  " + join(violations, "\n  "));
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_workspace(text.str(), path);
}

nlohmann::ordered_json workspace_json(const Workspace& ws) {
  njson j = njson::object();
  j["hvdc"] = 1;
  auto emit = [&j](const char* section, const auto& table, const auto& serialize) {
    if (table.empty()) return;
    njson s = njson::object();
    for (const auto& [name, entry] : table) s[name] = serialize(entry);
    j[section] = std::move(s);
  };
  emit("categories", ws.categories, [](const FinCategory& c) { return category_json(c); });
  emit("functors", ws.functors, [&ws](const FinFunctor& f) { return functor_json(f, ws); });
  emit("transformations", ws.transformations,
       [&ws](const NatTransformation& t) { return transformation_json(t, ws); });
  emit("profunctors", ws.profunctors,
       [&ws](const Profunctor& p) { return profunctor_json(p, ws); });
  emit("presheaves", ws.presheaves, [&ws](const Presheaf& p) { return presheaf_json(p, ws); });
  emit("cells", ws.cells, [&ws](const Cell& c) { return cell_json(c, ws); });
  emit("monoidal", ws.monoidal,
       [&ws](const MonoidalStructure& m) { return monoidal_json(m, ws); });
  emit("lax_functors", ws.lax_functors,
       [&ws](const Workspace::LaxEntry& e) { return lax_json(e, ws); });
  emit("monoidal_profunctors", ws.monoidal_profunctors,
       [&ws](const Workspace::MonProfEntry& e) { return monprof_json(e, ws); });
  emit("contexts", ws.contexts,
       [](const Workspace::ContextEntry& e) { return context_json(e); });
  return j;
}

void save_workspace(const Workspace& ws, const std::string& path) {
  const njson j = workspace_json(ws);
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write file '" + path + "'");
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string Report::command() const {
  std::vector<std::string> parts{name};
  parts.insert(parts.end(), args.begin(), args.end());
  if (options.ctx) {
    parts.push_back("--ctx");
    parts.push_back(*options.ctx);
  }
  if (options.path_len) {
    parts.push_back("--path-len");
    parts.push_back(std::to_string(*options.path_len));
  }
  if (options.arity) {
    parts.push_back("--arity");
    parts.push_back(std::to_string(*options.arity));
  }
  if (options.seed) {
    parts.push_back("--seed");
    parts.push_back(std::to_string(*options.seed));
  }
  return join(parts, " ");
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ReportCheck& c) { return c.result.ok(); });
}

nlohmann::ordered_json report_json(const Report& report) {
  njson j = njson::object();
  j["hvdc"] = 1;
  njson cmd = njson::object();
  cmd["name"] = report.name;
  cmd["args"] = report.args;
  njson o = njson::object();
  if (report.options.ctx) o["ctx"] = *report.options.ctx;
  if (report.options.path_len) o["path_len"] = *report.options.path_len;
  if (report.options.arity) o["arity"] = *report.options.arity;
  if (report.options.seed) o["seed"] = *report.options.seed;
  cmd["options"] = std::move(o);
  j["command"] = std::move(cmd);
  j["echo"] = report.command();
  njson checks = njson::array();
  for (const ReportCheck& c : report.checks) {
    njson entry = njson::object();
    entry["name"] = c.name;
    entry["verdict"] = to_string(c.result.verdict);
    entry["detail"] = c.result.detail;
    if (c.result.witness) entry["witness"] = cell_inline(*c.result.witness);
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  j["artifacts"] = report.artifacts;
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

namespace {

Verdict verdict_from(const std::string& text, const std::string& where) {
  if (text == "holds_exact") return Verdict::holds_exact;
  if (text == "holds_bounded") return Verdict::holds_bounded;
  if (text == "fails") return Verdict::fails;
  bad(where + ": unknown verdict '" + text + "'");
}

}  // namespace

Report report_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("hvdc") || j.at("hvdc") != 1) {
    bad("report: not an hvdc document (expected a top-level {\"hvdc\": 1})");
  }
  Report rep;
  try {
    const njson& cmd = field(j, "command", "report");
    rep.name = field(cmd, "name", "report/command").get<std::string>();
    rep.args = field(cmd, "args", "report/command").get<std::vector<std::string>>();
    const njson& o = field(cmd, "options", "report/command");
    if (o.contains("ctx")) rep.options.ctx = o.at("ctx").get<std::string>();
    if (o.contains("path_len")) rep.options.path_len = o.at("path_len").get<std::size_t>();
    if (o.contains("arity")) rep.options.arity = o.at("arity").get<std::size_t>();
    if (o.contains("seed")) rep.options.seed = o.at("seed").get<std::uint64_t>();
    for (const njson& entry : field(j, "checks", "report")) {
      ReportCheck c;
      c.name = field(entry, "name", "report/checks").get<std::string>();
      c.result.verdict =
          verdict_from(field(entry, "verdict", "report/checks").get<std::string>(),
                       "report/checks");
      c.result.detail = field(entry, "detail", "report/checks").get<std::string>();
      if (entry.contains("witness")) {
        c.result.witness = cell_from_inline(entry.at("witness"), "report/checks/witness");
      }
      rep.checks.push_back(std::move(c));
    }
    rep.artifacts = field(j, "artifacts", "report");
    rep.elapsed_ms = field(j, "elapsed_ms", "report").get<double>();
  } catch (const njson::exception& e) {
    bad(std::string("report: parse error: ") + e.what());
  }
  return rep;
}

std::string report_text(const Report& report) {
  std::ostringstream out;
  out << "command: " << report.command() << "\n";
  std::size_t failed = 0;
  for (const ReportCheck& c : report.checks) {
    if (!c.result.ok()) ++failed;
    out << "  " << to_string(c.result.verdict) << "  " << c.name;
    if (!c.result.detail.empty()) out << " — " << c.result.detail;
    if (c.result.witness) out << " [witness attached]";
    out << "\n";
  }
  if (report.ok()) {
    out << "result: ok (" << report.checks.size() << " checks)\n";
  } else {
    out << "result: FAILED (" << failed << " of " << report.checks.size() << " checks)\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

Report run(const std::string& command, const std::vector<std::string>& args,
           const Workspace& ws, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.name = command;
  rep.args = args;
  rep.options = opt;
  try {
    dispatch(rep, ws, opt, command, args);
  } catch (const std::invalid_argument& e) {
    bad("shape mismatch: " + std::string(e.what()));
  } catch (const std::out_of_range& e) {
    bad("shape mismatch: " + std::string(e.what()));
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

bool verify_witness(const Report& stored, const Workspace& ws) {
  const Report again = run(stored.name, stored.args, ws, stored.options);
  njson a = report_json(stored);
  njson b = report_json(again);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  return a == b;
}

}  // namespace hvdc
