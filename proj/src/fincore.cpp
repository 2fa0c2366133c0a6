#include "hvdc/fincore.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace hvdc {

// ---------------------------------------------------------------------------
// util
// ---------------------------------------------------------------------------

std::uint64_t enum_budget() {
  if (const char* env = std::getenv("HVDC_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string mint(const std::string& tag, const std::vector<std::string>& parts) {
  return tag + "(" + join(parts, ",") + ")";
}

// ---------------------------------------------------------------------------
// FinSet / FinFunction
// ---------------------------------------------------------------------------

FinSet::FinSet(std::vector<Atom> xs) : elems(std::move(xs)) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
}

FinSet::FinSet(std::initializer_list<Atom> xs) : FinSet(std::vector<Atom>(xs)) {}

bool FinSet::contains(const Atom& a) const {
  return std::binary_search(elems.begin(), elems.end(), a);
}

FinSet FinSet::merged(const FinSet& other) const {
  std::vector<Atom> all = elems;
  all.insert(all.end(), other.elems.begin(), other.elems.end());
  return FinSet(std::move(all));
}

const Atom& FinFunction::operator()(const Atom& a) const {
  auto it = table.find(a);
  if (it == table.end()) throw std::out_of_range("FinFunction: no entry for " + a);
  return it->second;
}

std::vector<std::string> validate_function(const FinFunction& f) {
  std::vector<std::string> report;
  for (const Atom& a : f.source)
    if (!f.table.count(a)) report.push_back("function missing entry for " + a);
  for (const auto& [a, b] : f.table) {
    if (!f.source.contains(a)) report.push_back("function entry for unknown element " + a);
    if (!f.target.contains(b)) report.push_back("function value " + b + " (at " + a + ") not in target");
  }
  return report;
}

// ---------------------------------------------------------------------------
// FinCategory
// ---------------------------------------------------------------------------

void FinCategory::normalize() {
  for (auto it = hom.begin(); it != hom.end();) {
    if (it->second.empty())
      it = hom.erase(it);
    else
      ++it;
  }
  ends.clear();
  for (const auto& [xy, ms] : hom)
    for (const Atom& m : ms) ends.emplace(m, xy);
}

FinCategory FinCategory::build(FinSet objects, std::map<AtomPair, FinSet> hom,
                               std::map<Atom, Atom> identity, std::map<AtomPair, Atom> comp) {
  FinCategory c;
  c.objects = std::move(objects);
  c.hom = std::move(hom);
  c.identity = std::move(identity);
  c.comp = std::move(comp);
  c.normalize();
  return c;
}

const FinSet& FinCategory::hom_set(const Atom& x, const Atom& y) const {
  static const FinSet kEmpty;
  auto it = hom.find({x, y});
  return it == hom.end() ? kEmpty : it->second;
}

const Atom& FinCategory::dom(const Atom& m) const {
  auto it = ends.find(m);
  if (it == ends.end()) throw std::out_of_range("unknown morphism " + m);
  return it->second.first;
}

const Atom& FinCategory::cod(const Atom& m) const {
  auto it = ends.find(m);
  if (it == ends.end()) throw std::out_of_range("unknown morphism " + m);
  return it->second.second;
}

const Atom& FinCategory::id(const Atom& x) const {
  auto it = identity.find(x);
  if (it == identity.end()) throw std::out_of_range("no identity for object " + x);
  return it->second;
}

const Atom& FinCategory::compose(const Atom& g, const Atom& f) const {
  auto it = comp.find({g, f});
  if (it == comp.end()) throw std::out_of_range("no composite for (" + g + ", " + f + ")");
  return it->second;
}

std::vector<Atom> FinCategory::morphisms() const {
  std::vector<Atom> out;
  for (const auto& [xy, ms] : hom) out.insert(out.end(), ms.begin(), ms.end());
  return out;
}

std::vector<std::string> validate_category(const FinCategory& c) {
  std::vector<std::string> report;

  // Hom-sets reference known objects and are pairwise disjoint.
  std::map<Atom, AtomPair> seen;
  for (const auto& [xy, ms] : c.hom) {
    if (!c.objects.contains(xy.first))
      report.push_back("hom key references unknown object " + xy.first);
    if (!c.objects.contains(xy.second))
      report.push_back("hom key references unknown object " + xy.second);
    for (const Atom& m : ms) {
      auto [it, fresh] = seen.emplace(m, xy);
      if (!fresh)
        report.push_back("morphism atom " + m + " appears in hom(" + it->second.first + "," +
                         it->second.second + ") and hom(" + xy.first + "," + xy.second + ")");
    }
  }

  // Identities.
  for (const Atom& x : c.objects) {
    auto it = c.identity.find(x);
    if (it == c.identity.end()) {
      report.push_back("missing identity for object " + x);
      continue;
    }
    if (!c.hom_set(x, x).contains(it->second))
      report.push_back("identity of " + x + " (" + it->second + ") is not in hom(" + x + "," + x + ")");
  }
  for (const auto& [x, m] : c.identity)
    if (!c.objects.contains(x)) report.push_back("identity entry for unknown object " + x);

  if (!report.empty()) return report;  // endpoint data unreliable beyond this point

  // Composition table: defined exactly on composable pairs, valued correctly.
  std::vector<Atom> mors = c.morphisms();
  for (const Atom& g : mors)
    for (const Atom& f : mors) {
      bool composable = c.dom(g) == c.cod(f);
      auto it = c.comp.find({g, f});
      if (composable && it == c.comp.end())
        report.push_back("missing composite (" + g + ", " + f + ")");
      if (!composable && it != c.comp.end())
        report.push_back("composite (" + g + ", " + f + ") defined but pair is not composable");
      if (composable && it != c.comp.end() &&
          !c.hom_set(c.dom(f), c.cod(g)).contains(it->second))
        report.push_back("composite (" + g + ", " + f + ") = " + it->second +
                         " lands outside hom(" + c.dom(f) + "," + c.cod(g) + ")");
    }
  for (const auto& [gf, h] : c.comp)
    if (!c.has_morphism(gf.first) || !c.has_morphism(gf.second))
      report.push_back("composition entry (" + gf.first + ", " + gf.second +
                       ") references unknown morphisms");
  if (!report.empty()) return report;

  // Unit laws.
  for (const Atom& m : mors) {
    if (c.compose(m, c.id(c.dom(m))) != m)
      report.push_back("right unit law fails for " + m);
    if (c.compose(c.id(c.cod(m)), m) != m)
      report.push_back("left unit law fails for " + m);
  }

  // Associativity.
  for (const Atom& h : mors)
    for (const Atom& g : mors) {
      if (c.dom(h) != c.cod(g)) continue;
      for (const Atom& f : mors) {
        if (c.dom(g) != c.cod(f)) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          report.push_back("associativity fails on (" + h + ", " + g + ", " + f + ")");
      }
    }
  return report;
}

FinCategory opposite(const FinCategory& c) {
  std::map<AtomPair, FinSet> hom;
  for (const auto& [xy, ms] : c.hom) hom[{xy.second, xy.first}] = ms;
  std::map<AtomPair, Atom> comp;
  for (const auto& [gf, h] : c.comp) comp[{gf.second, gf.first}] = h;
  return FinCategory::build(c.objects, std::move(hom), c.identity, std::move(comp));
}

// ---------------------------------------------------------------------------
// quotient (union-find, least-atom representative)
// ---------------------------------------------------------------------------

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

QuotientResult quotient(const FinSet& x, const std::vector<AtomPair>& pairs) {
  std::map<Atom, std::size_t> index;
  for (std::size_t i = 0; i < x.elems.size(); ++i) index[x.elems[i]] = i;

  UnionFind uf(x.elems.size());
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw std::out_of_range("quotient: unknown atom " + a);
    if (ib == index.end()) throw std::out_of_range("quotient: unknown atom " + b);
    uf.unite(ia->second, ib->second);
  }

  // Least atom of each class is its representative; elems is sorted, so the
  // first visit to a root names the class.
  std::map<std::size_t, Atom> rep;
  for (std::size_t i = 0; i < x.elems.size(); ++i) {
    std::size_t r = uf.find(i);
    rep.emplace(r, x.elems[i]);
  }

  QuotientResult out;
  std::vector<Atom> classes;
  for (const auto& [r, a] : rep) classes.push_back(a);
  out.classes = FinSet(std::move(classes));
  out.projection.source = x;
  out.projection.target = out.classes;
  for (std::size_t i = 0; i < x.elems.size(); ++i)
    out.projection.table[x.elems[i]] = rep.at(uf.find(i));
  return out;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

std::vector<FinFunction> enumerate_functions(const FinSet& x, const FinSet& y) {
  std::vector<FinFunction> out;
  if (!x.empty() && y.empty()) return out;
  EnumGuard guard("enumerate_functions");

  std::vector<std::size_t> pick(x.size(), 0);
  while (true) {
    guard.tick();
    FinFunction f;
    f.source = x;
    f.target = y;
    for (std::size_t i = 0; i < x.size(); ++i) f.table[x.elems[i]] = y.elems[pick[i]];
    out.push_back(std::move(f));

    std::size_t i = x.size();
    while (i > 0 && pick[i - 1] + 1 == y.size()) pick[--i] = 0;
    if (i == 0) break;
    ++pick[i - 1];
  }
  return out;
}

const Atom& FinFunctor::ob(const Atom& x) const {
  auto it = obj_map.find(x);
  if (it == obj_map.end()) throw std::out_of_range("functor: no object entry for " + x);
  return it->second;
}

const Atom& FinFunctor::mor(const Atom& m) const {
  auto it = mor_map.find(m);
  if (it == mor_map.end()) throw std::out_of_range("functor: no morphism entry for " + m);
  return it->second;
}

FinFunctor identity_functor(const FinCategory& c) {
  FinFunctor f;
  f.source = c;
  f.target = c;
  for (const Atom& x : c.objects) f.obj_map[x] = x;
  for (const Atom& m : c.morphisms()) f.mor_map[m] = m;
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (!(f.target == g.source))
    throw std::invalid_argument("compose_functors: boundary mismatch");
  FinFunctor h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [x, fx] : f.obj_map) h.obj_map[x] = g.ob(fx);
  for (const auto& [m, fm] : f.mor_map) h.mor_map[m] = g.mor(fm);
  return h;
}

std::vector<std::string> validate_functor(const FinFunctor& f) {
  std::vector<std::string> report;
  for (const Atom& x : f.source.objects) {
    auto it = f.obj_map.find(x);
    if (it == f.obj_map.end())
      report.push_back("functor missing object entry for " + x);
    else if (!f.target.objects.contains(it->second))
      report.push_back("functor sends " + x + " to unknown object " + it->second);
  }
  if (!report.empty()) return report;

  for (const Atom& m : f.source.morphisms()) {
    auto it = f.mor_map.find(m);
    if (it == f.mor_map.end()) {
      report.push_back("functor missing morphism entry for " + m);
      continue;
    }
    const Atom& fx = f.ob(f.source.dom(m));
    const Atom& fy = f.ob(f.source.cod(m));
    if (!f.target.hom_set(fx, fy).contains(it->second))
      report.push_back("functor image of " + m + " (" + it->second + ") is not in hom(" + fx +
                       "," + fy + ")");
  }
  if (!report.empty()) return report;

  for (const Atom& x : f.source.objects)
    if (f.mor(f.source.id(x)) != f.target.id(f.ob(x)))
      report.push_back("functor does not preserve the identity of " + x);
  for (const auto& [gf, h] : f.source.comp)
    if (f.target.compose(f.mor(gf.first), f.mor(gf.second)) != f.mor(h))
      report.push_back("functor does not preserve the composite (" + gf.first + ", " +
                       gf.second + ")");
  return report;
}

std::vector<std::string> validate_nat_transformation(const NatTransformation& t) {
  std::vector<std::string> report;
  if (!(t.source.source == t.target.source) || !(t.source.target == t.target.target)) {
    report.push_back("natural transformation between non-parallel functors");
    return report;
  }
  const FinCategory& a = t.source.source;
  const FinCategory& m = t.source.target;
  for (const Atom& x : a.objects) {
    auto it = t.components.find(x);
    if (it == t.components.end()) {
      report.push_back("missing component at " + x);
      continue;
    }
    if (!m.hom_set(t.source.ob(x), t.target.ob(x)).contains(it->second))
      report.push_back("component at " + x + " (" + it->second + ") has wrong endpoints");
  }
  if (!report.empty()) return report;

  for (const Atom& f : a.morphisms()) {
    const Atom& x = a.dom(f);
    const Atom& y = a.cod(f);
    if (m.compose(t.target.mor(f), t.components.at(x)) !=
        m.compose(t.components.at(y), t.source.mor(f)))
      report.push_back("naturality fails at " + f);
  }
  return report;
}

std::vector<NatTransformation> enumerate_nat_transformations(const FinFunctor& f,
                                                             const FinFunctor& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw std::invalid_argument("enumerate_nat_transformations: functors not parallel");

  const FinCategory& a = f.source;
  const FinCategory& m = f.target;
  const std::vector<Atom>& obs = a.objects.elems;
  std::vector<Atom> mors = a.morphisms();

  std::vector<NatTransformation> out;
  EnumGuard guard("enumerate_nat_transformations");
  std::map<Atom, Atom> partial;

  // Naturality can be checked as soon as both endpoint components exist.
  auto consistent = [&](const Atom& x) {
    for (const Atom& mm : mors) {
      const Atom& dx = a.dom(mm);
      const Atom& cx = a.cod(mm);
      if (dx != x && cx != x) continue;
      auto di = partial.find(dx);
      auto ci = partial.find(cx);
      if (di == partial.end() || ci == partial.end()) continue;
      if (m.compose(g.mor(mm), di->second) != m.compose(ci->second, f.mor(mm))) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == obs.size()) {
      NatTransformation t;
      t.source = f;
      t.target = g;
      t.components = partial;
      out.push_back(std::move(t));
      return;
    }
    const Atom& x = obs[i];
    for (const Atom& c : m.hom_set(f.ob(x), g.ob(x))) {
      guard.tick();
      partial[x] = c;
      if (consistent(x)) rec(i + 1);
      partial.erase(x);
    }
  };
  rec(0);
  return out;
}

std::vector<FinFunctor> enumerate_functors(const FinCategory& a, const FinCategory& b) {
  const std::vector<Atom>& obs = a.objects.elems;
  std::vector<Atom> mors = a.morphisms();

  // Positions of non-identity morphisms; identities are forced by obj choice.
  std::vector<Atom> free_mors;
  for (const Atom& m : mors) {
    bool is_id = false;
    for (const auto& [x, i] : a.identity)
      if (i == m) { is_id = true; break; }
    if (!is_id) free_mors.push_back(m);
  }

  std::vector<FinFunctor> out;
  EnumGuard guard("enumerate_functors");
  std::map<Atom, Atom> omap, mmap;

  auto comp_consistent = [&]() {
    for (const auto& [gf, h] : a.comp) {
      auto gi = mmap.find(gf.first);
      auto fi = mmap.find(gf.second);
      auto hi = mmap.find(h);
      if (gi == mmap.end() || fi == mmap.end() || hi == mmap.end()) continue;
      if (b.compose(gi->second, fi->second) != hi->second) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec_mor = [&](std::size_t i) {
    if (i == free_mors.size()) {
      FinFunctor f;
      f.source = a;
      f.target = b;
      f.obj_map = omap;
      f.mor_map = mmap;
      out.push_back(std::move(f));
      return;
    }
    const Atom& m = free_mors[i];
    const Atom& fx = omap.at(a.dom(m));
    const Atom& fy = omap.at(a.cod(m));
    for (const Atom& im : b.hom_set(fx, fy)) {
      guard.tick();
      mmap[m] = im;
      if (comp_consistent()) rec_mor(i + 1);
      mmap.erase(m);
    }
  };

  std::function<void(std::size_t)> rec_obj = [&](std::size_t i) {
    if (i == obs.size()) {
      mmap.clear();
      for (const Atom& x : obs) mmap[a.id(x)] = b.id(omap.at(x));
      if (comp_consistent()) rec_mor(0);
      return;
    }
    for (const Atom& y : b.objects) {
      guard.tick();
      omap[obs[i]] = y;
      rec_obj(i + 1);
      omap.erase(obs[i]);
    }
  };
  rec_obj(0);
  return out;
}

}  // namespace hvdc
