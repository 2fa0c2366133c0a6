#include "hvdc/corpus.hpp"

#include <stdexcept>

namespace hvdc::corpus {

namespace {

Atom le(const Atom& x, const Atom& y) { return "le:" + x + ":" + y; }

}  // namespace

FinCategory terminal_category() { return discrete_category({"*"}); }

FinCategory discrete_category(const std::vector<Atom>& names) {
  std::map<AtomPair, FinSet> hom;
  std::map<Atom, Atom> identity;
  std::map<AtomPair, Atom> comp;
  for (const Atom& x : names) {
    Atom i = "id:" + x;
    hom[{x, x}] = FinSet{i};
    identity[x] = i;
    comp[{i, i}] = i;
  }
  return FinCategory::build(FinSet(names), std::move(hom), std::move(identity), std::move(comp));
}

FinCategory poset_category(const std::vector<Atom>& names, const std::vector<AtomPair>& leq) {
  FinSet objects(names);
  // Reflexive-transitive closure.
  std::map<AtomPair, bool> rel;
  for (const Atom& x : objects) rel[{x, x}] = true;
  for (const auto& p : leq) rel[p] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Atom& x : objects)
      for (const Atom& y : objects)
        for (const Atom& z : objects)
          if (rel.count({x, y}) && rel.count({y, z}) && !rel.count({x, z})) {
            rel[{x, z}] = true;
            changed = true;
          }
  }

  std::map<AtomPair, FinSet> hom;
  std::map<Atom, Atom> identity;
  std::map<AtomPair, Atom> comp;
  for (const auto& [xy, _] : rel) hom[xy] = FinSet{le(xy.first, xy.second)};
  for (const Atom& x : objects) identity[x] = le(x, x);
  for (const auto& [gf, _w] : rel)
    for (const auto& [hk, _v] : rel)
      if (hk.first == gf.second)  // gf: x→y, hk: y→z
        comp[{le(hk.first, hk.second), le(gf.first, gf.second)}] = le(gf.first, hk.second);
  return FinCategory::build(std::move(objects), std::move(hom), std::move(identity),
                            std::move(comp));
}

FinCategory monoid_category(const std::vector<Atom>& elems,
                            const std::vector<std::vector<int>>& mult, int unit) {
  Atom star = "*";
  std::vector<Atom> ms;
  for (const Atom& e : elems) ms.push_back("m:" + e);
  std::map<AtomPair, FinSet> hom{{{star, star}, FinSet(ms)}};
  std::map<Atom, Atom> identity{{star, ms[static_cast<std::size_t>(unit)]}};
  std::map<AtomPair, Atom> comp;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      comp[{ms[i], ms[j]}] = ms[static_cast<std::size_t>(mult[i][j])];
  return FinCategory::build(FinSet{star}, std::move(hom), std::move(identity), std::move(comp));
}

FinCategory walking_arrow() { return poset_category({"0", "1"}, {{"0", "1"}}); }

FinCategory walking_iso() {
  std::map<AtomPair, FinSet> hom{
      {{"x", "x"}, FinSet{"id:x"}},
      {{"y", "y"}, FinSet{"id:y"}},
      {{"x", "y"}, FinSet{"s"}},
      {{"y", "x"}, FinSet{"t"}},
  };
  std::map<Atom, Atom> identity{{"x", "id:x"}, {"y", "id:y"}};
  std::map<AtomPair, Atom> comp{
      {{"id:x", "id:x"}, "id:x"}, {{"id:y", "id:y"}, "id:y"},
      {{"s", "id:x"}, "s"},       {{"id:y", "s"}, "s"},
      {{"t", "id:y"}, "t"},       {{"id:x", "t"}, "t"},
      {{"t", "s"}, "id:x"},       {{"s", "t"}, "id:y"},
  };
  return FinCategory::build(FinSet{"x", "y"}, std::move(hom), std::move(identity),
                            std::move(comp));
}

FinCategory parallel_pair() {
  std::map<AtomPair, FinSet> hom{
      {{"0", "0"}, FinSet{"id:0"}},
      {{"1", "1"}, FinSet{"id:1"}},
      {{"0", "1"}, FinSet{"par:a", "par:b"}},
  };
  std::map<Atom, Atom> identity{{"0", "id:0"}, {"1", "id:1"}};
  std::map<AtomPair, Atom> comp{
      {{"id:0", "id:0"}, "id:0"},   {{"id:1", "id:1"}, "id:1"},
      {{"par:a", "id:0"}, "par:a"}, {{"id:1", "par:a"}, "par:a"},
      {{"par:b", "id:0"}, "par:b"}, {{"id:1", "par:b"}, "par:b"},
  };
  return FinCategory::build(FinSet{"0", "1"}, std::move(hom), std::move(identity),
                            std::move(comp));
}

FinCategory span_category() {
  return poset_category({"a", "b", "s"}, {{"s", "a"}, {"s", "b"}});
}

FinCategory commuting_square() {
  return poset_category({"00", "01", "10", "11"},
                        {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
}

FinCategory chain_poset(int n) {
  std::vector<Atom> names;
  std::vector<AtomPair> leq;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) leq.push_back({names[i], names[i + 1]});
  return poset_category(names, leq);
}

FinCategory cyclic_group_category(int n) {
  std::vector<Atom> elems;
  for (int i = 0; i < n; ++i) elems.push_back("g" + std::to_string(i));
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  return monoid_category(elems, mult, 0);
}

FinCategory walking_idempotent() {
  return monoid_category({"1", "e"}, {{0, 1}, {1, 1}}, 0);
}

std::vector<NamedCategory> standard_categories() {
  return {
      {"one", terminal_category()},
      {"two_discrete", discrete_category({"0", "1"})},
      {"arrow", walking_arrow()},
      {"iso", walking_iso()},
      {"parallel", parallel_pair()},
      {"span", span_category()},
      {"square", commuting_square()},
      {"chain3", chain_poset(3)},
      {"bz2", cyclic_group_category(2)},
      {"bz3", cyclic_group_category(3)},
      {"idem", walking_idempotent()},
  };
}

}  // namespace hvdc::corpus
