#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvdc/corpus.hpp"
#include "hvdc/kan.hpp"
#include "hvdc/monoidal.hpp"
#include "hvdc/util.hpp"

using namespace hvdc;

namespace {

std::vector<Key> object_tuples(const FinCategory& c, std::size_t n) {
  std::vector<Key> out{Key{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Key> next;
    for (const Key& k : out)
      for (const Atom& x : c.objects) {
        Key ext = k;
        ext.push_back(x);
        next.push_back(ext);
      }
    out = next;
  }
  return out;
}

/// Exclusive-or on the two-object discrete category, unit "0".
MonoidalStructure xor_structure(std::size_t bound = 3) {
  const FinCategory base = corpus::discrete_category({"0", "1"});
  auto obj_op = [](const Atom& a, const Atom& b) -> Atom { return a == b ? "0" : "1"; };
  auto mor_op = [&base, obj_op](const Atom& a, const Atom& b) -> Atom {
    return base.id(obj_op(base.dom(a), base.dom(b)));
  };
  return strict_monoidal(base, "0", obj_op, mor_op, bound);
}

/// Maximum on the chain poset 0 < 1 < … < n-1, unit "0".
MonoidalStructure chain_max(int n, std::size_t bound) {
  const FinCategory base = corpus::chain_poset(n);
  auto obj_op = [](const Atom& a, const Atom& b) -> Atom { return std::max(a, b); };
  auto mor_op = [&base, obj_op](const Atom& a, const Atom& b) -> Atom {
    return "le:" + obj_op(base.dom(a), base.dom(b)) + ":" + obj_op(base.cod(a), base.cod(b));
  };
  return strict_monoidal(base, "0", obj_op, mor_op, bound);
}

/// Group multiplication of Z/2 as a strict tensor on its one-object category.
MonoidalStructure group_strict(std::size_t bound = 3) {
  const FinCategory base = corpus::cyclic_group_category(2);
  auto obj_op = [](const Atom&, const Atom&) -> Atom { return "*"; };
  auto mor_op = [&base](const Atom& a, const Atom& b) -> Atom { return base.compose(a, b); };
  return strict_monoidal(base, "*", obj_op, mor_op, bound);
}

/// The same tensor with the nontrivial unitor and the parity associators
/// 𝔞_S = g^(|S| mod 2); coherence follows from parity additivity.
MonoidalStructure group_twisted(std::size_t bound = 3) {
  MonoidalStructure m = group_strict(bound);
  m.unitor["*"] = "m:g1";
  for (auto& [key, value] : m.associator)
    value = key.first.size() % 2 == 1 ? "m:g1" : "m:g0";
  return m;
}

Atom n5_meet_of(const Atom& x, const Atom& y) {
  if (x == y) return x;
  if (x == "0" || y == "0") return "0";
  if (x == "1") return y;
  if (y == "1") return x;
  if ((x == "a" && y == "b") || (x == "b" && y == "a")) return "a";
  return "0";  // a∧c and b∧c land on the bottom
}

/// Meet on the five-element non-distributive lattice N5 (0 < a < b < 1,
/// 0 < c < 1), unit the top element.
MonoidalStructure n5_meet(std::size_t bound) {
  const FinCategory base = corpus::poset_category(
      {"0", "a", "b", "c", "1"},
      {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
  auto mor_op = [&base](const Atom& a, const Atom& b) -> Atom {
    return "le:" + n5_meet_of(base.dom(a), base.dom(b)) + ":" +
           n5_meet_of(base.cod(a), base.cod(b));
  };
  return strict_monoidal(base, "1", n5_meet_of, mor_op, bound);
}

/// Minimum on the walking arrow, unit "1".
MonoidalStructure arrow_min(std::size_t bound = 3) {
  const FinCategory base = corpus::walking_arrow();
  auto obj_op = [](const Atom& a, const Atom& b) -> Atom { return std::min(a, b); };
  auto mor_op = [&base, obj_op](const Atom& a, const Atom& b) -> Atom {
    return "le:" + obj_op(base.dom(a), base.dom(b)) + ":" + obj_op(base.cod(a), base.cod(b));
  };
  return strict_monoidal(base, "1", obj_op, mor_op, bound);
}

/// Exclusive-or transported onto the walking isomorphism, unit "x".
MonoidalStructure iso_xor(std::size_t bound = 3) {
  const FinCategory base = corpus::walking_iso();
  auto obj_op = [](const Atom& a, const Atom& b) -> Atom { return a == b ? "x" : "y"; };
  auto mor_op = [&base, obj_op](const Atom& a, const Atom& b) -> Atom {
    return base.hom_set(obj_op(base.dom(a), base.dom(b)), obj_op(base.cod(a), base.cod(b)))
        .elems[0];
  };
  return strict_monoidal(base, "x", obj_op, mor_op, bound);
}

/// The two-element monoid {1, e} with e absorbing, as a strict tensor.
MonoidalStructure idem_structure(std::size_t bound = 3) {
  const FinCategory base = corpus::walking_idempotent();
  auto obj_op = [](const Atom&, const Atom&) -> Atom { return "*"; };
  auto mor_op = [&base](const Atom& a, const Atom& b) -> Atom { return base.compose(a, b); };
  return strict_monoidal(base, "*", obj_op, mor_op, bound);
}

/// Maximum as a strict tensor on a discrete chain of object names.
MonoidalStructure discrete_max(const std::vector<Atom>& names, std::size_t bound) {
  const FinCategory base = corpus::discrete_category(names);
  auto obj_op = [](const Atom& a, const Atom& b) -> Atom { return std::max(a, b); };
  auto mor_op = [&base, obj_op](const Atom& a, const Atom& b) -> Atom {
    return base.id(obj_op(base.dom(a), base.dom(b)));
  };
  return strict_monoidal(base, names.front(), obj_op, mor_op, bound);
}

/// x ↦ max(x, 1) on a chain-max structure, lax with identity compositors.
LaxMonoidalFunctor clamp_lax(const MonoidalStructure& m) {
  LaxMonoidalFunctor f;
  f.underlying.source = m.base;
  f.underlying.target = m.base;
  auto clamp = [](const Atom& x) { return std::max(x, Atom("1")); };
  for (const Atom& x : m.base.objects) f.underlying.obj_map[x] = clamp(x);
  for (const Atom& a : m.base.morphisms())
    f.underlying.mor_map[a] = "le:" + clamp(m.base.dom(a)) + ":" + clamp(m.base.cod(a));
  f.flavor = LaxMonoidalFunctor::Flavor::lax;
  for (std::size_t n = 0; n <= m.arity_bound; ++n)
    for (const Key& xs : object_tuples(m.base, n)) {
      Key fxs;
      for (const Atom& x : xs) fxs.push_back(clamp(x));
      // From the tensor of clamps up to the clamp of the tensor; the two
      // differ only at arity zero, where the unit must rise to "1".
      f.compositors[xs] = "le:" + m.tensor_of(fxs) + ":" + clamp(m.tensor_of(xs));
    }
  return f;
}

/// x ↦ min(x, 2) on a chain-max structure, colax with identity compositors.
LaxMonoidalFunctor floor_colax(const MonoidalStructure& m) {
  LaxMonoidalFunctor f;
  f.underlying.source = m.base;
  f.underlying.target = m.base;
  auto floor = [](const Atom& x) { return std::min(x, Atom("2")); };
  for (const Atom& x : m.base.objects) f.underlying.obj_map[x] = floor(x);
  for (const Atom& a : m.base.morphisms())
    f.underlying.mor_map[a] = "le:" + floor(m.base.dom(a)) + ":" + floor(m.base.cod(a));
  f.flavor = LaxMonoidalFunctor::Flavor::colax;
  for (std::size_t n = 0; n <= m.arity_bound; ++n)
    for (const Key& xs : object_tuples(m.base, n)) {
      Key fxs;
      for (const Atom& x : xs) fxs.push_back(floor(x));
      f.compositors[xs] = m.base.id(m.tensor_of(fxs));
    }
  return f;
}

/// The object swap on the walking isomorphism; pseudo but not strict, with
/// compositors the unique connecting isomorphisms.
LaxMonoidalFunctor swap_pseudo(const MonoidalStructure& m) {
  LaxMonoidalFunctor f;
  f.underlying.source = m.base;
  f.underlying.target = m.base;
  f.underlying.obj_map = {{"x", "y"}, {"y", "x"}};
  f.underlying.mor_map = {{"id:x", "id:y"}, {"id:y", "id:x"}, {"s", "t"}, {"t", "s"}};
  f.flavor = LaxMonoidalFunctor::Flavor::pseudo;
  for (std::size_t n = 0; n <= m.arity_bound; ++n)
    for (const Key& xs : object_tuples(m.base, n)) {
      Key fxs;
      for (const Atom& x : xs) fxs.push_back(f.underlying.obj_map.at(x));
      f.compositors[xs] =
          m.base.hom_set(m.tensor_of(fxs), f.underlying.ob(m.tensor_of(xs))).elems[0];
    }
  return f;
}

/// Collapse of the xor base onto B(Z/2), strong with identity compositors.
LaxMonoidalFunctor collapse_to_group(const MonoidalStructure& src, const MonoidalStructure& tgt,
                                     const Atom& compositor) {
  LaxMonoidalFunctor f;
  f.underlying.source = src.base;
  f.underlying.target = tgt.base;
  for (const Atom& x : src.base.objects) f.underlying.obj_map[x] = "*";
  for (const Atom& a : src.base.morphisms()) f.underlying.mor_map[a] = "m:g0";
  f.flavor = LaxMonoidalFunctor::Flavor::pseudo;
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(src.base, n)) f.compositors[xs] = compositor;
  return f;
}

NatTransformation identity_nat(const FinFunctor& f) {
  NatTransformation t;
  t.source = f;
  t.target = f;
  for (const Atom& x : f.source.objects) t.components[x] = f.target.id(f.ob(x));
  return t;
}

/// A presheaf on a discrete base: the listed fibers with identity actions.
Presheaf discrete_presheaf(const FinCategory& base,
                           const std::map<Atom, std::vector<Atom>>& vals) {
  Presheaf p;
  p.base = base;
  for (const Atom& x : base.objects) {
    p.values[x] = vals.count(x) ? FinSet(vals.at(x)) : FinSet{};
    for (const Atom& v : p.values[x]) p.action[{base.id(x), v}] = v;
  }
  return p;
}

/// On B(Z/2): the nontrivial element swaps a two-element set.
Presheaf swap_presheaf() {
  Presheaf p;
  p.base = corpus::cyclic_group_category(2);
  p.values["*"] = FinSet{"p", "q"};
  p.action[{"m:g0", "p"}] = "p";
  p.action[{"m:g0", "q"}] = "q";
  p.action[{"m:g1", "p"}] = "q";
  p.action[{"m:g1", "q"}] = "p";
  return p;
}

/// Same atoms on B(Z/2) but with the trivial action.
Presheaf trivial_pair_presheaf() {
  Presheaf p = swap_presheaf();
  p.action[{"m:g1", "p"}] = "p";
  p.action[{"m:g1", "q"}] = "q";
  return p;
}

/// On the walking arrow: two elements over 1, one over 0; the arrow merges.
Presheaf merge_presheaf() {
  Presheaf p;
  p.base = corpus::walking_arrow();
  p.values["0"] = FinSet{"ga"};
  p.values["1"] = FinSet{"al", "be"};
  p.action[{"le:0:0", "ga"}] = "ga";
  p.action[{"le:1:1", "al"}] = "al";
  p.action[{"le:1:1", "be"}] = "be";
  p.action[{"le:0:1", "al"}] = "ga";
  p.action[{"le:0:1", "be"}] = "ga";
  return p;
}

/// A monoidal profunctor over the xor structure with every element in the
/// (0,0) fiber and the structure folded from `op` with `unit` as the
/// nullary value.
MonoidalProfunctor diagonal_z2_prof(const MonoidalStructure& m, const std::vector<Atom>& elems,
                                    const Atom& unit,
                                    const std::function<Atom(const Atom&, const Atom&)>& op) {
  std::map<AtomPair, FinSet> fibers{{{"0", "0"}, FinSet(elems)}};
  std::map<AtomPair, Atom> lact, ract;
  for (const Atom& u : elems) {
    lact[{"id:0", u}] = u;
    ract[{u, "id:0"}] = u;
  }
  MonoidalProfunctor j;
  j.underlying = Profunctor::build(m.base, m.base, fibers, lact, ract);
  std::vector<Key> level{Key{}};
  for (std::size_t n = 0; n <= m.arity_bound; ++n) {
    for (const Key& es : level) {
      Atom acc = unit;
      for (const Atom& e : es) acc = op(acc, e);
      j.structure[es] = acc;
    }
    std::vector<Key> next;
    for (const Key& k : level)
      for (const Atom& e : elems) {
        Key ext = k;
        ext.push_back(e);
        next.push_back(ext);
      }
    level = next;
  }
  return j;
}

/// Two elements split across the (0,0) and (0,1) fibers; the structure
/// tracks the parity of the off-diagonal slots.
MonoidalProfunctor split_z2_prof(const MonoidalStructure& m) {
  std::map<AtomPair, FinSet> fibers{{{"0", "0"}, FinSet{"u"}}, {{"0", "1"}, FinSet{"v"}}};
  std::map<AtomPair, Atom> lact, ract;
  for (const Atom& e : {Atom("u"), Atom("v")}) {
    lact[{"id:0", e}] = e;
    ract[{e, e == "u" ? "id:0" : "id:1"}] = e;
  }
  MonoidalProfunctor j;
  j.underlying = Profunctor::build(m.base, m.base, fibers, lact, ract);
  std::vector<Key> level{Key{}};
  for (std::size_t n = 0; n <= m.arity_bound; ++n) {
    for (const Key& es : level) {
      std::size_t odd = 0;
      for (const Atom& e : es) odd += e == "v" ? 1 : 0;
      j.structure[es] = odd % 2 == 1 ? "v" : "u";
    }
    std::vector<Key> next;
    for (const Key& k : level)
      for (const Atom& e : {Atom("u"), Atom("v")}) {
        Key ext = k;
        ext.push_back(e);
        next.push_back(ext);
      }
    level = next;
  }
  return j;
}

/// Singleton fibers J(0,0), J(1,1), J(2,1), J(3,2) between the discrete max
/// chains {0..3} and {0..2}; every structure entry is forced.
MonoidalProfunctor forced_max_prof(const MonoidalStructure& a0, const MonoidalStructure& a1) {
  const std::map<AtomPair, Atom> fiber{
      {{"0", "0"}, "j00"}, {{"1", "1"}, "j11"}, {{"2", "1"}, "j21"}, {{"3", "2"}, "j32"}};
  std::map<AtomPair, FinSet> elems;
  std::map<AtomPair, Atom> lact, ract;
  for (const auto& [xy, u] : fiber) {
    elems[xy] = FinSet{u};
    lact[{a0.base.id(xy.first), u}] = u;
    ract[{u, a1.base.id(xy.second)}] = u;
  }
  MonoidalProfunctor j;
  j.underlying = Profunctor::build(a0.base, a1.base, elems, lact, ract);
  j.structure[{}] = "j00";
  for (const auto& [xy, u] : fiber) j.structure[{u}] = u;
  for (const auto& [xy1, u1] : fiber)
    for (const auto& [xy2, u2] : fiber)
      j.structure[Key{u1, u2}] =
          fiber.at({std::max(xy1.first, xy2.first), std::max(xy1.second, xy2.second)});
  return j;
}

/// The diagram 0↦1, 1↦a, 2↦c, 3↦b into N5, lax via the meet comparisons.
LaxMonoidalFunctor meet_valued_diagram(const MonoidalStructure& a0, const MonoidalStructure& n5) {
  const std::map<Atom, Atom> img{{"0", "1"}, {"1", "a"}, {"2", "c"}, {"3", "b"}};
  LaxMonoidalFunctor d;
  d.underlying.source = a0.base;
  d.underlying.target = n5.base;
  for (const auto& [x, v] : img) {
    d.underlying.obj_map[x] = v;
    d.underlying.mor_map[a0.base.id(x)] = n5.base.id(v);
  }
  d.flavor = LaxMonoidalFunctor::Flavor::lax;
  d.compositors[{}] = n5.base.id("1");
  for (const auto& [x, v] : img) d.compositors[{x}] = n5.base.id(v);
  for (const auto& [x1, v1] : img)
    for (const auto& [x2, v2] : img)
      d.compositors[Key{x1, x2}] =
          "le:" + n5_meet_of(v1, v2) + ":" + img.at(std::max(x1, x2));
  return d;
}

/// The genuinely pointwise extension values over the squared index chain;
/// this is the competitor that defeats the tensored unit at (1,2).
FinFunctor competing_cocone(const FinCategory& a1, const FinCategory& n5) {
  const std::map<AtomPair, Atom> table{
      {{"0", "0"}, "1"}, {{"0", "1"}, "1"}, {{"0", "2"}, "b"},
      {{"1", "0"}, "1"}, {{"1", "1"}, "1"}, {{"1", "2"}, "a"},
      {{"2", "0"}, "b"}, {{"2", "1"}, "a"}, {{"2", "2"}, "b"}};
  FinFunctor k;
  k.source = power_category(a1, 2);
  k.target = n5;
  for (const auto& [ys, v] : table) {
    k.obj_map[mint("tup", {ys.first, ys.second})] = v;
    k.mor_map[mint("tup", {a1.id(ys.first), a1.id(ys.second)})] = n5.id(v);
  }
  return k;
}

std::string flat(const std::vector<std::string>& report) { return join(report, " | "); }

bool mentions(const std::vector<std::string>& report, const std::string& needle) {
  return std::any_of(report.begin(), report.end(), [&](const std::string& line) {
    return line.find(needle) != std::string::npos;
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Structures
// ---------------------------------------------------------------------------

TEST_CASE("strict tensors validate across the fixture structures") {
  for (const MonoidalStructure& m :
       {xor_structure(), chain_max(4, 3), group_strict(), n5_meet(2), arrow_min(), iso_xor(),
        idem_structure()}) {
    const auto report = validate_monoidal(m);
    CHECK_MESSAGE(report.empty(), flat(report));
  }
}

TEST_CASE("the twisted group structure is coherent but its perturbations are not") {
  MonoidalStructure tw = group_twisted();
  const auto good = validate_monoidal(tw);
  CHECK_MESSAGE(good.empty(), flat(good));
  CHECK(tw.unitor_at("*") == "m:g1");
  CHECK(tw.assoc({2, 1}, {"*", "*", "*"}) == "m:g0");

  SUBCASE("a wrong associator parity breaks unit coherence") {
    tw.associator[{Shape{1, 1}, Key{"*", "*"}}] = "m:g1";
    const auto report = validate_monoidal(tw);
    CHECK(mentions(report, "unit coherence"));
  }
  SUBCASE("a mistyped associator is caught before the equations") {
    MonoidalStructure am = arrow_min();
    am.associator[{Shape{1, 1}, Key{"0", "1"}}] = "le:0:1";
    CHECK(mentions(validate_monoidal(am), "wrong endpoints"));
  }
  SUBCASE("a missing tensor entry stops validation early") {
    MonoidalStructure zx = xor_structure();
    zx.tensor_obj[2].erase(Key{"0", "1"});
    const auto report = validate_monoidal(zx);
    REQUIRE(report.size() == 1);
    CHECK(report[0] == "object tensor of arity 2 missing at (0, 1)");
  }
}

TEST_CASE("shape enumeration matches the closed count") {
  CHECK(shapes_within(0).size() == 1);
  CHECK(shapes_within(1).size() == 3);
  CHECK(shapes_within(2).size() == 10);
  CHECK(shapes_within(3).size() == 35);
  const auto shapes = shapes_within(2);
  CHECK(std::count(shapes.begin(), shapes.end(), Shape{}) == 1);
  CHECK(std::count(shapes.begin(), shapes.end(), Shape{1, 1}) == 1);
  CHECK(std::count(shapes.begin(), shapes.end(), Shape{2, 1}) == 0);
}

TEST_CASE("tensor accessors reject out-of-range arities") {
  const MonoidalStructure m = xor_structure();
  CHECK(m.unit_object() == "0");
  CHECK(m.tensor_of({"1", "1", "1"}) == "1");
  CHECK_THROWS_AS(m.tensor_of(Key(4, "0")), std::out_of_range);
  CHECK_THROWS_AS(m.assoc({3, 1}, Key(4, "0")), std::out_of_range);
  CHECK_THROWS_AS(strict_monoidal(m.base, "2", nullptr, nullptr, 1), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Monoidal functors
// ---------------------------------------------------------------------------

TEST_CASE("identity and composite monoidal functors validate") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const LaxMonoidalFunctor id = identity_lax(c4);
  CHECK(validate_lax_functor(id, c4, c4).empty());
  CHECK(id.flavor == LaxMonoidalFunctor::Flavor::pseudo);

  const LaxMonoidalFunctor cl = clamp_lax(c4);
  CHECK(validate_lax_functor(cl, c4, c4).empty());

  const LaxMonoidalFunctor twice = compose_lax(cl, cl);
  CHECK(twice.flavor == LaxMonoidalFunctor::Flavor::lax);
  CHECK(twice.underlying == cl.underlying);  // the clamp is idempotent
  CHECK(validate_lax_functor(twice, c4, c4).empty());

  const LaxMonoidalFunctor with_id = compose_lax(id, cl);
  CHECK(with_id.flavor == LaxMonoidalFunctor::Flavor::lax);
  CHECK(validate_lax_functor(with_id, c4, c4).empty());
}

TEST_CASE("colax structures validate through the mirrored axioms") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const LaxMonoidalFunctor fl = floor_colax(c4);
  CHECK(validate_lax_functor(fl, c4, c4).empty());

  const LaxMonoidalFunctor twice = compose_lax(fl, fl);
  CHECK(twice.flavor == LaxMonoidalFunctor::Flavor::colax);
  CHECK(validate_lax_functor(twice, c4, c4).empty());

  LaxMonoidalFunctor strictly_lax = clamp_lax(c4);
  CHECK_THROWS_AS(compose_lax(strictly_lax, fl), std::invalid_argument);
  CHECK_THROWS_AS(compose_lax(fl, strictly_lax), std::invalid_argument);
}

TEST_CASE("broken compositors are reported") {
  const MonoidalStructure g2 = group_strict();
  LaxMonoidalFunctor f = identity_lax(g2);
  f.compositors[Key{"*", "*", "*"}] = "m:g1";
  CHECK(mentions(validate_lax_functor(f, g2, g2), "associator compatibility"));

  const MonoidalStructure idem = idem_structure();
  LaxMonoidalFunctor g = identity_lax(idem);
  g.compositors[Key{"*", "*"}] = "m:e";
  CHECK(mentions(validate_lax_functor(g, idem, idem), "no two-sided inverse"));
}

TEST_CASE("the swap on the walking isomorphism is pseudo but not strict") {
  const MonoidalStructure m = iso_xor();
  const LaxMonoidalFunctor sw = swap_pseudo(m);
  CHECK(validate_lax_functor(sw, m, m).empty());
  CHECK(sw.compositors.at(Key{"y", "y"}) == "s");  // x = y⊗y → σ(y⊗y) = y

  const LaxMonoidalFunctor round = compose_lax(sw, sw);
  CHECK(round.flavor == LaxMonoidalFunctor::Flavor::pseudo);
  CHECK(round.underlying == identity_functor(m.base));
  CHECK(validate_lax_functor(round, m, m).empty());
}

// ---------------------------------------------------------------------------
// Monoidal transformations
// ---------------------------------------------------------------------------

TEST_CASE("a monotone clamp is a monoidal transformation") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const LaxMonoidalFunctor id = identity_lax(c4);
  const LaxMonoidalFunctor cl = clamp_lax(c4);
  NatTransformation xi;
  xi.source = id.underlying;
  xi.target = cl.underlying;
  for (const Atom& x : c4.base.objects) xi.components[x] = "le:" + x + ":" + std::max(x, Atom("1"));
  const auto report = validate_monoidal_transformation(xi, id, cl, c4, c4);
  CHECK_MESSAGE(report.empty(), flat(report));
}

TEST_CASE("a group element fails the transformation axiom exactly at even arities") {
  const MonoidalStructure g2 = group_strict();
  const LaxMonoidalFunctor id = identity_lax(g2);
  NatTransformation xi = identity_nat(id.underlying);
  xi.components["*"] = "m:g1";
  const auto report = validate_monoidal_transformation(xi, id, id, g2, g2);
  REQUIRE(report.size() == 2);
  CHECK(report[0] == "monoidal axiom fails at ()");
  CHECK(report[1] == "monoidal axiom fails at (*, *)");
}

// ---------------------------------------------------------------------------
// Monoidal profunctors
// ---------------------------------------------------------------------------

TEST_CASE("hom profunctors carry the tensor as a monoidal structure") {
  for (const MonoidalStructure& m : {xor_structure(), chain_max(4, 3), group_twisted()}) {
    const MonoidalProfunctor h = hom_monoidal(m);
    const auto report = validate_monoidal_profunctor(h, m, m);
    CHECK_MESSAGE(report.empty(), flat(report));
  }
}

TEST_CASE("a corrupted structure table fails equivariance") {
  const MonoidalStructure g2 = group_strict();
  MonoidalProfunctor h = hom_monoidal(g2);
  h.structure[Key{"m:g0", "m:g1"}] = "m:g0";
  CHECK_FALSE(validate_monoidal_profunctor(h, g2, g2).empty());
}

TEST_CASE("companions of strong functors are monoidal") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const MonoidalProfunctor k_id = companion_monoidal(identity_lax(c4), c4, c4);
  CHECK(validate_monoidal_profunctor(k_id, c4, c4).empty());

  const MonoidalStructure c2 = chain_max(2, 3);
  LaxMonoidalFunctor embed;
  embed.underlying.source = c2.base;
  embed.underlying.target = c4.base;
  embed.underlying.obj_map = {{"0", "0"}, {"1", "2"}};
  embed.underlying.mor_map = {
      {"le:0:0", "le:0:0"}, {"le:1:1", "le:2:2"}, {"le:0:1", "le:0:2"}};
  embed.flavor = LaxMonoidalFunctor::Flavor::pseudo;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const Key& xs : object_tuples(c2.base, n)) {
      Key fxs;
      for (const Atom& x : xs) fxs.push_back(embed.underlying.ob(x));
      embed.compositors[xs] = c4.base.id(c4.tensor_of(fxs));
    }
  REQUIRE(validate_lax_functor(embed, c2, c4).empty());
  const MonoidalProfunctor k_embed = companion_monoidal(embed, c2, c4);
  CHECK(validate_monoidal_profunctor(k_embed, c2, c4).empty());

  const LaxMonoidalFunctor fl = floor_colax(c4);
  const MonoidalProfunctor k_floor = companion_monoidal(fl, c4, c4);
  CHECK(validate_monoidal_profunctor(k_floor, c4, c4).empty());

  LaxMonoidalFunctor strictly_lax = clamp_lax(c4);
  CHECK_THROWS_AS(companion_monoidal(strictly_lax, c4, c4), std::invalid_argument);
}

TEST_CASE("profunctor structures over the two-point discrete base") {
  const MonoidalStructure zx = xor_structure();
  auto setxor = [](const Atom& a, const Atom& b) -> Atom {
    if (a == "a0") return b;
    if (b == "a0") return a;
    return "a0";
  };
  auto absorb = [](const Atom& a, const Atom& b) -> Atom { return a == b ? a : "c0"; };
  auto only = [](const Atom&, const Atom&) -> Atom { return "u0"; };

  const MonoidalProfunctor point = diagonal_z2_prof(zx, {"u0"}, "u0", only);
  CHECK(validate_monoidal_profunctor(point, zx, zx).empty());

  const MonoidalProfunctor pair_group = diagonal_z2_prof(zx, {"a0", "c0"}, "a0", setxor);
  CHECK(validate_monoidal_profunctor(pair_group, zx, zx).empty());

  const MonoidalProfunctor pair_absorb = diagonal_z2_prof(zx, {"a0", "c0"}, "a0", absorb);
  CHECK(validate_monoidal_profunctor(pair_absorb, zx, zx).empty());

  const MonoidalProfunctor split = split_z2_prof(zx);
  CHECK(validate_monoidal_profunctor(split, zx, zx).empty());

  // A single element away from the unit fiber cannot be monoidal: already
  // the nullary structure would need an element of the empty (0,0) fiber.
  MonoidalProfunctor stray;
  stray.underlying = Profunctor::build(zx.base, zx.base, {{{"0", "1"}, FinSet{"w"}}},
                                       {{{"id:0", "w"}, "w"}}, {{{"w", "id:1"}, "w"}});
  stray.structure[{"w"}] = "w";
  CHECK(mentions(validate_monoidal_profunctor(stray, zx, zx), "structure missing at ()"));
}

// ---------------------------------------------------------------------------
// Day convolution
// ---------------------------------------------------------------------------

TEST_CASE("convolution sizes over a discrete base count matched splittings") {
  const MonoidalStructure zx = xor_structure();
  const Presheaf p = discrete_presheaf(zx.base, {{"0", {"p"}}, {"1", {"q1", "q2"}}});
  const Presheaf q = discrete_presheaf(zx.base, {{"0", {"r"}}});

  const Presheaf pq = day_convolution(zx, {p, q}, 2);
  CHECK(pq.at("0").size() == 1);  // p·r over 0⊕0
  CHECK(pq.at("1").size() == 2);  // q·r over 1⊕0

  const Presheaf ppp = day_convolution(zx, {p, p, p}, 3);
  CHECK(ppp.at("0").size() == 13);
  CHECK(ppp.at("1").size() == 14);

  CHECK(day_convolution(zx, {}, 0) == yoneda_object(zx.base, "0"));
  CHECK_THROWS_AS(day_convolution(zx, {p, p, p, p}, 4), std::invalid_argument);
  CHECK_THROWS_AS(day_convolution(zx, {merge_presheaf()}, 1), std::invalid_argument);
}

TEST_CASE("convolution of representables collapses to the representable of the tensor") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const Presheaf y1 = yoneda_object(c4.base, "1");
  const Presheaf y2 = yoneda_object(c4.base, "2");
  const Presheaf conv = day_convolution(c4, {y1, y2}, 2);
  for (const Atom& x : c4.base.objects)
    CHECK(conv.at(x).size() == c4.base.hom_set(x, "2").size());
  const Presheaf sq = day_convolution(c4, {y1, y1}, 2);
  for (const Atom& x : c4.base.objects)
    CHECK(sq.at(x).size() == c4.base.hom_set(x, "1").size());
}

TEST_CASE("day maps are functorial and reject non-natural families") {
  const MonoidalStructure c4 = chain_max(4, 3);
  const Presheaf y1 = yoneda_object(c4.base, "1");
  const Presheaf y2 = yoneda_object(c4.base, "2");
  const Presheaf conv = day_convolution(c4, {y1, y2}, 2);
  const PresheafNat moved =
      day_map(c4, {y1, y2}, {y1, y2}, {identity_presheaf_nat(y1), identity_presheaf_nat(y2)}, 2);
  CHECK(moved == identity_presheaf_nat(conv));

  const MonoidalStructure g2 = group_strict();
  const Presheaf sw = swap_presheaf();
  PresheafNat collapse_all;
  for (const Atom& v : sw.at("*")) collapse_all["*"][v] = "p";
  CHECK_THROWS_AS(
      day_map(g2, {sw, sw}, {sw, sw}, {collapse_all, identity_presheaf_nat(sw)}, 2),
      std::logic_error);
}

TEST_CASE("flatten isomorphisms hold on the twisted group structure") {
  const MonoidalStructure tw = group_twisted();
  const std::vector<DaySlot> slots{DaySlot{{swap_presheaf(), trivial_pair_presheaf()}, true},
                                   DaySlot{{swap_presheaf()}, false}};
  const DayIso iso = day_flatten_iso(tw, slots);
  CHECK_MESSAGE(iso.report.empty(), flat(iso.report));
  CHECK(iso.source.at("*").size() == iso.target.at("*").size());

  CHECK_THROWS_AS(
      day_flatten_iso(tw, {DaySlot{{swap_presheaf(), swap_presheaf()}, false}}),
      std::invalid_argument);
}

TEST_CASE("unit slots cancel through the unit isomorphism") {
  const MonoidalStructure tw = group_twisted();
  for (bool left : {true, false}) {
    const DayIso iso = day_unit_iso(tw, swap_presheaf(), left);
    CHECK_MESSAGE(iso.report.empty(), flat(iso.report));
  }
  const DayIso single = day_singleton_iso(arrow_min(), merge_presheaf());
  CHECK_MESSAGE(single.report.empty(), flat(single.report));

  const MonoidalStructure narrow = xor_structure(1);
  CHECK_THROWS_AS(day_unit_iso(narrow, discrete_presheaf(narrow.base, {}), true),
                  std::invalid_argument);
}

// ---------------------------------------------------------------------------
// The monoidal Yoneda comparison
// ---------------------------------------------------------------------------

TEST_CASE("the yoneda comparison is a monoidal natural isomorphism") {
  for (const MonoidalStructure& m :
       {xor_structure(), chain_max(4, 2), group_twisted(), n5_meet(2)}) {
    const MonoidalYonedaStructure ymc = yoneda_monoidal_structure(m);
    CHECK_MESSAGE(ymc.report.empty(), flat(ymc.report));
  }
}

TEST_CASE("currying the monoidal hom yields the yoneda structure on the nose") {
  const MonoidalStructure c4 = chain_max(4, 2);
  const MonoidalCurryResult mc = monoidal_curry(hom_monoidal(c4), c4, c4);
  CHECK_MESSAGE(mc.report.empty(), flat(mc.report));
  CHECK(mc.curried.exact);
  CHECK(mc.all_invertible);

  const MonoidalYonedaStructure ymc = yoneda_monoidal_structure(c4);
  CHECK(mc.convolution == ymc.convolution);
  CHECK(mc.compositors == ymc.forward);
}

TEST_CASE("curry compositors witness the failure of invertibility") {
  const MonoidalStructure zx = xor_structure();
  auto setxor = [](const Atom& a, const Atom& b) -> Atom {
    if (a == "a0") return b;
    if (b == "a0") return a;
    return "a0";
  };
  const MonoidalProfunctor pair_group = diagonal_z2_prof(zx, {"a0", "c0"}, "a0", setxor);
  const MonoidalCurryResult mc = monoidal_curry(pair_group, zx, zx);
  CHECK_MESSAGE(mc.report.empty(), flat(mc.report));
  CHECK_FALSE(mc.all_invertible);
  CHECK_FALSE(mc.invertible.at(Key{"0", "0"}));  // four classes onto two elements
  CHECK(mc.invertible.at(Key{"0", "1"}));        // empty onto empty
}

// ---------------------------------------------------------------------------
// The coend comparison
// ---------------------------------------------------------------------------

TEST_CASE("the coend comparison is bijective for hom and companion structures") {
  const MonoidalStructure zx = xor_structure();
  const CheckResult hom_bc = monoidal_beck_chevalley(hom_monoidal(zx), zx, zx);
  CHECK(hom_bc.verdict == Verdict::holds_exact);
  CHECK(hom_bc.detail.find("arity 3") != std::string::npos);

  const MonoidalStructure c4 = chain_max(4, 3);
  CHECK(monoidal_beck_chevalley(companion_monoidal(identity_lax(c4), c4, c4), c4, c4).ok());

  const MonoidalStructure c2 = chain_max(2, 3);
  LaxMonoidalFunctor embed;
  embed.underlying.source = c2.base;
  embed.underlying.target = c4.base;
  embed.underlying.obj_map = {{"0", "0"}, {"1", "2"}};
  embed.underlying.mor_map = {
      {"le:0:0", "le:0:0"}, {"le:1:1", "le:2:2"}, {"le:0:1", "le:0:2"}};
  embed.flavor = LaxMonoidalFunctor::Flavor::pseudo;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const Key& xs : object_tuples(c2.base, n)) {
      Key fxs;
      for (const Atom& x : xs) fxs.push_back(embed.underlying.ob(x));
      embed.compositors[xs] = c4.base.id(c4.tensor_of(fxs));
    }
  CHECK(monoidal_beck_chevalley(companion_monoidal(embed, c2, c4), c2, c4).ok());
}

TEST_CASE("the coend comparison fails for a collapse companion") {
  const MonoidalStructure zx = xor_structure();
  const MonoidalStructure g2 = group_strict();
  const LaxMonoidalFunctor col = collapse_to_group(zx, g2, "m:g0");
  REQUIRE(validate_lax_functor(col, zx, g2).empty());
  const MonoidalProfunctor k = companion_monoidal(col, zx, g2);
  REQUIRE(validate_monoidal_profunctor(k, zx, g2).empty());
  const CheckResult bc = monoidal_beck_chevalley(k, zx, g2);
  CHECK_FALSE(bc.ok());
  CHECK(bc.detail.find("misses") != std::string::npos);
}

TEST_CASE("the smallest instance failing the coend comparison has one element") {
  const MonoidalStructure zx = xor_structure();
  auto setxor = [](const Atom& a, const Atom& b) -> Atom {
    if (a == "a0") return b;
    if (b == "a0") return a;
    return "a0";
  };
  auto absorb = [](const Atom& a, const Atom& b) -> Atom { return a == b ? a : "c0"; };
  auto only = [](const Atom&, const Atom&) -> Atom { return "u0"; };

  // Validity already forces an inhabitant of the unit fiber, so the smallest
  // valid instances have one element — and every such instance fails: the
  // unit element sits over ⊗(1, 1) = 0, yet no pair of elements lies over
  // the tuple (1, 1) when the fibers over "1" are all empty.
  const CheckResult one = monoidal_beck_chevalley(diagonal_z2_prof(zx, {"u0"}, "u0", only), zx, zx);
  CHECK_FALSE(one.ok());
  CHECK(one.detail.find("misses") != std::string::npos);
  // Splitting a second element into an off-unit fiber restores the bijection.
  CHECK(monoidal_beck_chevalley(split_z2_prof(zx), zx, zx).ok());
  // Two elements stacked in the unit fiber fail again, for either fold.
  CHECK_FALSE(monoidal_beck_chevalley(diagonal_z2_prof(zx, {"a0", "c0"}, "a0", setxor), zx, zx)
                  .ok());
  CHECK_FALSE(monoidal_beck_chevalley(diagonal_z2_prof(zx, {"a0", "c0"}, "a0", absorb), zx, zx)
                  .ok());
}

// ---------------------------------------------------------------------------
// Doctrinal adjunction
// ---------------------------------------------------------------------------

TEST_CASE("doctrinal adjunction transfers pseudo structure to the right adjoint") {
  const MonoidalStructure c4 = chain_max(4, 2);
  const LaxMonoidalFunctor id = identity_lax(c4);
  const NatTransformation triv = identity_nat(id.underlying);
  const DoctrinalResult self = doctrinal_right_adjoint(id, id.underlying, triv, triv, c4, c4);
  CHECK_MESSAGE(self.report.empty(), flat(self.report));
  CHECK(self.right.compositors.at(Key{"1", "2"}) == "le:2:2");

  const MonoidalStructure m = iso_xor();
  const LaxMonoidalFunctor sw = swap_pseudo(m);
  NatTransformation unit;
  unit.source = identity_functor(m.base);
  unit.target = compose_functors(sw.underlying, sw.underlying);
  unit.components = {{"x", "id:x"}, {"y", "id:y"}};
  NatTransformation counit = unit;
  counit.source = unit.target;
  counit.target = unit.source;
  const DoctrinalResult mate = doctrinal_right_adjoint(sw, sw.underlying, unit, counit, m, m);
  CHECK_MESSAGE(mate.report.empty(), flat(mate.report));
  CHECK(mate.right.underlying == sw.underlying);
  CHECK(mate.right.flavor == LaxMonoidalFunctor::Flavor::lax);
  CHECK(mate.right.compositors.at(Key{"y", "y"}) == "s");
}

TEST_CASE("non-invertible compositors and broken triangles are rejected") {
  const MonoidalStructure idem = idem_structure();
  LaxMonoidalFunctor f = identity_lax(idem);
  f.compositors[Key{"*", "*"}] = "m:e";
  const NatTransformation triv = identity_nat(f.underlying);
  try {
    doctrinal_right_adjoint(f, f.underlying, triv, triv, idem, idem);
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("inverse") != std::string::npos);
  }

  const MonoidalStructure g2 = group_strict();
  const LaxMonoidalFunctor id = identity_lax(g2);
  NatTransformation unit = identity_nat(id.underlying);
  unit.components["*"] = "m:g1";
  const NatTransformation counit = identity_nat(id.underlying);
  try {
    doctrinal_right_adjoint(id, id.underlying, unit, counit, g2, g2);
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("triangle") != std::string::npos);
  }
}

// ---------------------------------------------------------------------------
// Lifting lax structure onto a Kan extension
// ---------------------------------------------------------------------------

TEST_CASE("lax structure lifts along the hom extension") {
  const MonoidalStructure c4 = chain_max(4, 2);
  const MonoidalProfunctor h = hom_monoidal(c4);
  const LaxMonoidalFunctor d = identity_lax(c4);
  const auto w = pointwise_lan(d.underlying, h.underlying);
  REQUIRE(w.has_value());

  const KanLiftResult out = lift_lax_structure_on_kan(d, h, *w, c4, c4, c4, Context{});
  CHECK_MESSAGE(out.report.empty(), flat(out.report));
  REQUIRE(out.lifted.has_value());
  CHECK(out.preservation.verdict == Verdict::holds_bounded);
  CHECK(out.preservation.detail.find("arity up to 2") != std::string::npos);
  CHECK(out.lifted->flavor == LaxMonoidalFunctor::Flavor::lax);
  CHECK(out.lifted->compositors.at(Key{"1", "2"}) == "le:2:2");
  CHECK(out.lifted->compositors.at(Key{}) == "le:0:0");
}

TEST_CASE("lax structure lifts onto a collapse with a twisted target") {
  const MonoidalStructure zx = xor_structure();
  const MonoidalStructure tw = group_twisted();
  const LaxMonoidalFunctor d = collapse_to_group(zx, tw, "m:g1");
  REQUIRE(validate_lax_functor(d, zx, tw).empty());

  const MonoidalProfunctor h = hom_monoidal(zx);
  const auto w = pointwise_lan(d.underlying, h.underlying);
  REQUIRE(w.has_value());

  const KanLiftResult out = lift_lax_structure_on_kan(d, h, *w, zx, zx, tw, Context{});
  CHECK_MESSAGE(out.report.empty(), flat(out.report));
  REQUIRE(out.lifted.has_value());
  CHECK(out.preservation.ok());
  CHECK(out.lifted->compositors.size() == 15);  // xor tuples of arity 0..3
}

TEST_CASE("a competing cocone defeats preservation at arity two") {
  const MonoidalStructure a0 = discrete_max({"0", "1", "2", "3"}, 2);
  const MonoidalStructure a1 = discrete_max({"0", "1", "2"}, 2);
  const MonoidalStructure n5 = n5_meet(2);

  const MonoidalProfunctor j = forced_max_prof(a0, a1);
  REQUIRE(validate_monoidal_profunctor(j, a0, a1).empty());
  const LaxMonoidalFunctor d = meet_valued_diagram(a0, n5);
  REQUIRE(validate_lax_functor(d, a0, n5).empty());

  const auto w = pointwise_lan(d.underlying, j.underlying);
  REQUIRE(w.has_value());
  CHECK(w->extension.ob("0") == "1");
  CHECK(w->extension.ob("1") == "1");  // the joined value forgets the meets
  CHECK(w->extension.ob("2") == "b");

  Context ctx;
  ctx.verticals.push_back(competing_cocone(a1.base, n5.base));
  REQUIRE(validate_functor(ctx.verticals[0]).empty());

  const KanLiftResult out = lift_lax_structure_on_kan(d, j, *w, a0, a1, n5, ctx);
  CHECK_FALSE(out.lifted.has_value());
  CHECK_FALSE(out.preservation.ok());
  CHECK(out.preservation.detail.rfind("arity 2:", 0) == 0);
}

// ---------------------------------------------------------------------------
// Product scaffolding
// ---------------------------------------------------------------------------

TEST_CASE("products and powers assemble componentwise") {
  const FinCategory empty_prod = product_category({});
  CHECK(empty_prod.objects.size() == 1);
  CHECK(empty_prod.morphisms().size() == 1);

  const FinCategory ar = corpus::walking_arrow();
  const FinCategory sq = power_category(ar, 2);
  CHECK(sq.objects.size() == 4);
  CHECK(sq.morphisms().size() == 9);
  CHECK(sq.compose(mint("tup", {"le:0:1", "le:1:1"}), mint("tup", {"le:0:0", "le:0:1"})) ==
        mint("tup", {"le:0:1", "le:0:1"}));

  const MonoidalStructure c4 = chain_max(4, 2);
  const FinFunctor tens = tensor_functor(c4, 2);
  CHECK(validate_functor(tens).empty());
  CHECK(tens.ob(mint("tup", {"1", "3"})) == "3");

  const Profunctor hp = profunctor_power(hom_profunctor(ar), 2);
  CHECK(validate_profunctor(hp).empty());
  CHECK(hp.all_elems().size() == 9);

  const FinFunctor pf = power_functor(identity_functor(ar), 2);
  CHECK(validate_functor(pf).empty());
  CHECK(pf.source == sq);
}
