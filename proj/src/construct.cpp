#include "hvdc/construct.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "hvdc/util.hpp"

namespace hvdc {

namespace {

Atom res_atom(const Atom& x, const Atom& y, const Atom& u) { return mint("res", {x, y, u}); }

}  // namespace

RestrictionResult restrict(const Profunctor& k, const FinFunctor& f, const FinFunctor& g) {
  if (!(f.target == k.source) || !(g.target == k.target)) {
    throw std::invalid_argument("restrict: functors do not land in the profunctor's boundary");
  }
  const FinCategory& a = f.source;
  const FinCategory& b = g.source;

  std::map<AtomPair, FinSet> elems;
  std::map<AtomPair, Atom> lact, ract;
  std::map<Atom, Atom> raw;  // copy -> original element
  for (const auto& x : a.objects) {
    for (const auto& y : b.objects) {
      const FinSet& fiber = k.at(f.ob(x), g.ob(y));
      if (fiber.empty()) continue;
      std::vector<Atom> copies;
      for (const auto& u : fiber) {
        const Atom r = res_atom(x, y, u);
        copies.push_back(r);
        raw[r] = u;
      }
      elems[{x, y}] = FinSet(copies);
      for (const auto& u : fiber) {
        const Atom r = res_atom(x, y, u);
        for (const auto& s : a.morphisms()) {
          if (a.cod(s) != x) continue;
          lact[{s, r}] = res_atom(a.dom(s), y, k.left(f.mor(s), u));
        }
        for (const auto& t : b.morphisms()) {
          if (b.dom(t) != y) continue;
          ract[{r, t}] = res_atom(x, b.cod(t), k.right(u, g.mor(t)));
        }
      }
    }
  }

  RestrictionResult out;
  out.profunctor = Profunctor::build(a, b, std::move(elems), std::move(lact), std::move(ract));
  out.cartesian_cell.frame = CellFrame{{out.profunctor}, f, g, k};
  for (const auto& [r, u] : raw) out.cartesian_cell.components[{r}] = u;
  return out;
}

RestrictionResult nullary_restrict(const FinCategory& c, const FinFunctor& f,
                                   const FinFunctor& g) {
  RestrictionResult r = restrict(hom_profunctor(c), f, g);
  Cell cart;
  cart.frame = CellFrame{{r.profunctor}, f, g, c};
  cart.components = r.cartesian_cell.components;
  return {std::move(r.profunctor), std::move(cart)};
}

CompanionResult companion(const FinFunctor& f) {
  CompanionResult out;
  out.restriction = nullary_restrict(f.target, f, identity_functor(f.target));
  out.cocartesian_cell.frame =
      CellFrame{{}, identity_functor(f.source), f, out.restriction.profunctor};
  for (const auto& x : f.source.objects) {
    out.cocartesian_cell.components[{x}] = res_atom(x, f.ob(x), f.target.id(f.ob(x)));
  }
  return out;
}

CompanionResult conjoint(const FinFunctor& f) {
  CompanionResult out;
  out.restriction = nullary_restrict(f.target, identity_functor(f.target), f);
  out.cocartesian_cell.frame =
      CellFrame{{}, f, identity_functor(f.source), out.restriction.profunctor};
  for (const auto& x : f.source.objects) {
    out.cocartesian_cell.components[{x}] = res_atom(f.ob(x), x, f.target.id(f.ob(x)));
  }
  return out;
}

UnitResult unit_profunctor(const FinCategory& a) {
  UnitResult out;
  out.profunctor = hom_profunctor(a);
  const FinFunctor id = identity_functor(a);
  out.cocartesian_cell.frame = CellFrame{{}, id, id, out.profunctor};
  for (const auto& x : a.objects) out.cocartesian_cell.components[{x}] = a.id(x);
  out.cartesian_cell.frame = CellFrame{{out.profunctor}, id, id, a};
  for (const auto& u : out.profunctor.all_elems()) out.cartesian_cell.components[{u}] = u;
  return out;
}

CompositeResult horizontal_composite(const std::vector<Profunctor>& path) {
  if (path.empty()) {
    throw std::invalid_argument("horizontal_composite: empty path (the unit is unit_profunctor)");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!(path[i].target == path[i + 1].source)) {
      throw std::invalid_argument("horizontal_composite: path does not chain at slot " +
                                  std::to_string(i + 2));
    }
  }

  const auto chains = path_chains(path);
  std::map<Key, AtomPair> chain_ends;
  std::map<Key, Key> parent;
  for (const auto& [k, ends] : chains) {
    chain_ends[k] = ends;
    parent[k] = k;
  }
  auto find = [&](Key k) {
    while (parent.at(k) != k) k = parent.at(k);
    return k;
  };
  for_each_seam_identification(path, [&](const Key& lhs, const Key& rhs) {
    const Key a = find(lhs), b = find(rhs);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  });

  // Least member of each class is its canonical representative.
  std::map<Key, Key> rep;  // root -> least member
  for (const auto& [k, ends] : chains) {
    const Key root = find(k);
    auto it = rep.find(root);
    if (it == rep.end() || k < it->second) rep[root] = k;
  }
  std::map<Key, Atom> class_map;
  for (const auto& [k, ends] : chains) class_map[k] = mint("cls", rep.at(find(k)));

  const FinCategory& a0 = path.front().source;
  const FinCategory& bn = path.back().target;
  std::map<AtomPair, FinSet> elems;
  {
    std::map<AtomPair, std::vector<Atom>> grouped;
    for (const auto& [root, r] : rep) grouped[chain_ends.at(r)].push_back(mint("cls", r));
    for (auto& [xy, atoms] : grouped) elems[xy] = FinSet(std::move(atoms));
  }
  std::map<AtomPair, Atom> lact, ract;
  for (const auto& [root, r] : rep) {
    const Atom cls = mint("cls", r);
    const auto [x, y] = chain_ends.at(r);
    for (const auto& s : a0.morphisms()) {
      if (a0.cod(s) != x) continue;
      Key moved = r;
      moved.front() = path.front().left(s, r.front());
      lact[{s, cls}] = class_map.at(moved);
    }
    for (const auto& t : bn.morphisms()) {
      if (bn.dom(t) != y) continue;
      Key moved = r;
      moved.back() = path.back().right(r.back(), t);
      ract[{cls, t}] = class_map.at(moved);
    }
  }

  CompositeResult out;
  out.profunctor = Profunctor::build(a0, bn, std::move(elems), std::move(lact), std::move(ract));
  out.cocartesian_cell.frame =
      CellFrame{path, identity_functor(a0), identity_functor(bn), out.profunctor};
  out.cocartesian_cell.components = class_map;
  out.class_map = std::move(class_map);
  return out;
}

TabulationResult tabulation(const Profunctor& j) {
  const FinCategory& a = j.source;
  const FinCategory& b = j.target;

  TabulationResult out;
  std::map<Atom, std::tuple<Atom, Atom, Atom>> info;  // object -> (x, u, y)
  std::vector<Atom> objs;
  for (const auto& [xy, fiber] : j.elems) {
    for (const auto& u : fiber) {
      const Atom t = mint("tab", {xy.first, u, xy.second});
      objs.push_back(t);
      info[t] = {xy.first, u, xy.second};
      out.object_elem[t] = u;
    }
  }

  auto sq = [](const Atom& u, const Atom& s, const Atom& t, const Atom& u2) {
    return mint("sq", {u, s, t, u2});
  };

  struct Square {
    Atom from, to, s, t, u, u2;
  };
  std::vector<Square> squares;
  std::map<AtomPair, FinSet> hom;
  std::map<Atom, Atom> identity;
  {
    std::map<AtomPair, std::vector<Atom>> grouped;
    for (const auto& [t1, i1] : info) {
      const auto& [x1, u1, y1] = i1;
      for (const auto& [t2, i2] : info) {
        const auto& [x2, u2, y2] = i2;
        for (const auto& s : a.hom_set(x1, x2)) {
          for (const auto& t : b.hom_set(y1, y2)) {
            if (j.right(u1, t) != j.left(s, u2)) continue;
            grouped[{t1, t2}].push_back(sq(u1, s, t, u2));
            squares.push_back({t1, t2, s, t, u1, u2});
          }
        }
      }
    }
    for (auto& [k, v] : grouped) hom[k] = FinSet(std::move(v));
  }
  for (const auto& [t1, i1] : info) {
    const auto& [x, u, y] = i1;
    identity[t1] = sq(u, a.id(x), b.id(y), u);
  }
  std::map<AtomPair, Atom> comp;
  for (const auto& m1 : squares) {
    for (const auto& m2 : squares) {
      if (m2.from != m1.to) continue;
      comp[{sq(m2.u, m2.s, m2.t, m2.u2), sq(m1.u, m1.s, m1.t, m1.u2)}] =
          sq(m1.u, a.compose(m2.s, m1.s), b.compose(m2.t, m1.t), m2.u2);
    }
  }
  out.category = FinCategory::build(FinSet(objs), std::move(hom), std::move(identity),
                                    std::move(comp));

  out.proj_source.source = out.category;
  out.proj_source.target = a;
  out.proj_target.source = out.category;
  out.proj_target.target = b;
  for (const auto& [t, i] : info) {
    out.proj_source.obj_map[t] = std::get<0>(i);
    out.proj_target.obj_map[t] = std::get<2>(i);
  }
  for (const auto& m : squares) {
    out.proj_source.mor_map[sq(m.u, m.s, m.t, m.u2)] = m.s;
    out.proj_target.mor_map[sq(m.u, m.s, m.t, m.u2)] = m.t;
  }

  out.projection.frame = CellFrame{{}, out.proj_source, out.proj_target, j};
  for (const auto& [t, u] : out.object_elem) out.projection.components[{t}] = u;
  return out;
}

CotabulationResult cotabulation(const Profunctor& j) {
  const FinCategory& a = j.source;
  const FinCategory& b = j.target;
  auto glo = [](const Atom& x) { return mint("glo", {x}); };
  auto gro = [](const Atom& y) { return mint("gro", {y}); };
  auto glm = [](const Atom& m) { return mint("glm", {m}); };
  auto grm = [](const Atom& m) { return mint("grm", {m}); };
  auto gj = [](const Atom& u) { return mint("gj", {u}); };

  std::vector<Atom> objs;
  for (const auto& x : a.objects) objs.push_back(glo(x));
  for (const auto& y : b.objects) objs.push_back(gro(y));

  std::map<AtomPair, FinSet> hom;
  for (const auto& [xy, fiber] : a.hom) {
    std::vector<Atom> ms;
    for (const auto& m : fiber) ms.push_back(glm(m));
    hom[{glo(xy.first), glo(xy.second)}] = FinSet(std::move(ms));
  }
  for (const auto& [xy, fiber] : b.hom) {
    std::vector<Atom> ms;
    for (const auto& m : fiber) ms.push_back(grm(m));
    hom[{gro(xy.first), gro(xy.second)}] = FinSet(std::move(ms));
  }
  for (const auto& [xy, fiber] : j.elems) {
    std::vector<Atom> ms;
    for (const auto& u : fiber) ms.push_back(gj(u));
    hom[{glo(xy.first), gro(xy.second)}] = FinSet(std::move(ms));
  }

  std::map<Atom, Atom> identity;
  for (const auto& x : a.objects) identity[glo(x)] = glm(a.id(x));
  for (const auto& y : b.objects) identity[gro(y)] = grm(b.id(y));

  std::map<AtomPair, Atom> comp;
  for (const auto& m1 : a.morphisms()) {
    for (const auto& m2 : a.morphisms()) {
      if (a.dom(m2) == a.cod(m1)) comp[{glm(m2), glm(m1)}] = glm(a.compose(m2, m1));
    }
  }
  for (const auto& m1 : b.morphisms()) {
    for (const auto& m2 : b.morphisms()) {
      if (b.dom(m2) == b.cod(m1)) comp[{grm(m2), grm(m1)}] = grm(b.compose(m2, m1));
    }
  }
  for (const auto& u : j.all_elems()) {
    const auto& [x, y] = j.position(u);
    for (const auto& m : a.morphisms()) {
      if (a.cod(m) == x) comp[{gj(u), glm(m)}] = gj(j.left(m, u));
    }
    for (const auto& m : b.morphisms()) {
      if (b.dom(m) == y) comp[{grm(m), gj(u)}] = gj(j.right(u, m));
    }
  }

  CotabulationResult out;
  out.category =
      FinCategory::build(FinSet(std::move(objs)), std::move(hom), std::move(identity),
                         std::move(comp));

  out.insert_source.source = a;
  out.insert_source.target = out.category;
  for (const auto& x : a.objects) out.insert_source.obj_map[x] = glo(x);
  for (const auto& m : a.morphisms()) out.insert_source.mor_map[m] = glm(m);
  out.insert_target.source = b;
  out.insert_target.target = out.category;
  for (const auto& y : b.objects) out.insert_target.obj_map[y] = gro(y);
  for (const auto& m : b.morphisms()) out.insert_target.mor_map[m] = grm(m);

  out.cell.frame = CellFrame{{j}, out.insert_source, out.insert_target, out.category};
  for (const auto& u : j.all_elems()) out.cell.components[{u}] = gj(u);
  return out;
}

bool is_full_and_faithful(const FinFunctor& f) {
  for (const auto& x : f.source.objects) {
    for (const auto& y : f.source.objects) {
      const FinSet& src = f.source.hom_set(x, y);
      const FinSet& dst = f.target.hom_set(f.ob(x), f.ob(y));
      if (src.size() != dst.size()) return false;
      std::set<Atom> image;
      for (const auto& m : src) image.insert(f.mor(m));
      if (image.size() != dst.size()) return false;
    }
  }
  return true;
}

std::optional<IsoWitness> find_profunctor_iso(const Profunctor& a, const Profunctor& b) {
  if (!(a.source == b.source) || !(a.target == b.target)) return std::nullopt;
  {
    std::set<AtomPair> keys;
    for (const auto& [xy, fiber] : a.elems) keys.insert(xy);
    for (const auto& [xy, fiber] : b.elems) keys.insert(xy);
    for (const auto& xy : keys) {
      if (a.at(xy.first, xy.second).size() != b.at(xy.first, xy.second).size()) {
        return std::nullopt;
      }
    }
  }
  const FinFunctor ids = identity_functor(a.source);
  const FinFunctor idt = identity_functor(a.target);
  for (const Cell& fwd : enumerate_cells(CellFrame{{a}, ids, idt, b})) {
    std::map<Atom, Atom> inverse;
    bool injective = true;
    for (const auto& [key, v] : fwd.components) {
      if (!inverse.emplace(v, key.front()).second) {
        injective = false;
        break;
      }
    }
    if (!injective) continue;
    IsoWitness iso;
    iso.forward = fwd;
    iso.backward.frame = CellFrame{{b}, ids, idt, a};
    for (const auto& [v, u] : inverse) iso.backward.components[{v}] = u;
    return iso;
  }
  return std::nullopt;
}

}  // namespace hvdc
