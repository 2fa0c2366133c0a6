#include "hvdc/monoidal.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "hvdc/construct.hpp"
#include "hvdc/util.hpp"

namespace hvdc {

namespace {

[[noreturn]] void incompatible(const std::string& why) {
  throw std::invalid_argument("monoidal: " + why);
}

Atom tup(const Key& parts) { return mint("tup", parts); }

std::string show(const Key& k) { return "(" + join(k, ", ") + ")"; }

std::string show(const Shape& s) {
  std::vector<std::string> parts;
  parts.reserve(s.size());
  for (std::size_t v : s) parts.push_back(std::to_string(v));
  return "(" + join(parts, ",") + ")";
}

std::size_t shape_total(const Shape& s) {
  std::size_t total = 0;
  for (std::size_t v : s) total += v;
  return total;
}

/// All n-tuples over a pool, odometer order (none when the pool is empty and
/// n > 0; exactly the empty tuple when n = 0).
std::vector<Key> tuples_over(const std::vector<Atom>& pool, std::size_t n, EnumGuard& guard) {
  std::vector<Key> out{Key{}};
  for (std::size_t level = 0; level < n; ++level) {
    std::vector<Key> next;
    next.reserve(out.size() * pool.size());
    for (const Key& k : out)
      for (const Atom& a : pool) {
        guard.tick();
        Key ext = k;
        ext.push_back(a);
        next.push_back(std::move(ext));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Key> object_tuples(const FinCategory& c, std::size_t n, EnumGuard& guard) {
  return tuples_over(c.objects.elems, n, guard);
}

std::vector<Key> morphism_tuples(const FinCategory& c, std::size_t n, EnumGuard& guard) {
  const std::vector<Atom> mors = c.morphisms();
  return tuples_over(mors, n, guard);
}

Key doms_of(const FinCategory& c, const Key& ms) {
  Key out;
  out.reserve(ms.size());
  for (const Atom& m : ms) out.push_back(c.dom(m));
  return out;
}

Key cods_of(const FinCategory& c, const Key& ms) {
  Key out;
  out.reserve(ms.size());
  for (const Atom& m : ms) out.push_back(c.cod(m));
  return out;
}

Key ids_of(const FinCategory& c, const Key& xs) {
  Key out;
  out.reserve(xs.size());
  for (const Atom& x : xs) out.push_back(c.id(x));
  return out;
}

std::vector<Key> split_groups(const Shape& sizes, const Key& flat) {
  std::vector<Key> out;
  out.reserve(sizes.size());
  std::size_t pos = 0;
  for (std::size_t len : sizes) {
    out.emplace_back(flat.begin() + pos, flat.begin() + pos + len);
    pos += len;
  }
  return out;
}

std::vector<Shape> split_shape(const Shape& sizes, const Shape& flat) {
  std::vector<Shape> out;
  out.reserve(sizes.size());
  std::size_t pos = 0;
  for (std::size_t len : sizes) {
    out.emplace_back(flat.begin() + pos, flat.begin() + pos + len);
    pos += len;
  }
  return out;
}

/// Visits every index tuple with idx[i] < sizes[i] (nothing when some size is
/// zero; once, with the empty tuple, when sizes is empty).
template <class F>
void for_each_choice(const std::vector<std::size_t>& sizes, EnumGuard& guard, F&& visit) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    guard.tick();
    visit(idx);
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] + 1 == sizes[i - 1]) idx[--i] = 0;
    if (i == 0) return;
    ++idx[i - 1];
  }
}

std::optional<Atom> two_sided_inverse(const FinCategory& c, const Atom& f) {
  const Atom& x = c.dom(f);
  const Atom& y = c.cod(f);
  for (const Atom& g : c.hom_set(y, x))
    if (c.compose(f, g) == c.id(y) && c.compose(g, f) == c.id(x)) return g;
  return std::nullopt;
}

/// Memoizes two-sided inverses of the structure components a construction
/// touches, so missing ones are reported once.
struct InverseCache {
  const FinCategory& cat;
  std::map<Atom, std::optional<Atom>> table;

  const std::optional<Atom>& of(const Atom& f) {
    auto [it, fresh] = table.try_emplace(f);
    if (fresh) it->second = two_sided_inverse(cat, f);
    return it->second;
  }
};

std::map<Atom, std::vector<Atom>> morphisms_by_cod(const FinCategory& c) {
  std::map<Atom, std::vector<Atom>> out;
  for (const Atom& x : c.objects) out[x];
  for (const Atom& m : c.morphisms()) out[c.cod(m)].push_back(m);
  return out;
}

std::map<Atom, std::vector<Atom>> morphisms_by_dom(const FinCategory& c) {
  std::map<Atom, std::vector<Atom>> out;
  for (const Atom& x : c.objects) out[x];
  for (const Atom& m : c.morphisms()) out[c.dom(m)].push_back(m);
  return out;
}

bool lax_direction(LaxMonoidalFunctor::Flavor f) { return f != LaxMonoidalFunctor::Flavor::colax; }

}  // namespace

// ---------------------------------------------------------------------------
// Monoidal structures
// ---------------------------------------------------------------------------

const Atom& MonoidalStructure::unit_object() const { return tensor_of({}); }

const Atom& MonoidalStructure::tensor_of(const Key& objects) const {
  if (objects.size() >= tensor_obj.size())
    throw std::out_of_range("monoidal: no object tensor table of arity " +
                            std::to_string(objects.size()));
  auto it = tensor_obj[objects.size()].find(objects);
  if (it == tensor_obj[objects.size()].end())
    throw std::out_of_range("monoidal: no object tensor entry at " + show(objects));
  return it->second;
}

const Atom& MonoidalStructure::tensor_map(const Key& morphisms) const {
  if (morphisms.size() >= tensor_mor.size())
    throw std::out_of_range("monoidal: no morphism tensor table of arity " +
                            std::to_string(morphisms.size()));
  auto it = tensor_mor[morphisms.size()].find(morphisms);
  if (it == tensor_mor[morphisms.size()].end())
    throw std::out_of_range("monoidal: no morphism tensor entry at " + show(morphisms));
  return it->second;
}

const Atom& MonoidalStructure::unitor_at(const Atom& x) const {
  auto it = unitor.find(x);
  if (it == unitor.end()) throw std::out_of_range("monoidal: no unitor entry at " + x);
  return it->second;
}

const Atom& MonoidalStructure::assoc(const Shape& shape, const Key& leaves) const {
  auto it = associator.find({shape, leaves});
  if (it == associator.end())
    throw std::out_of_range("monoidal: no associator entry at shape " + show(shape) + " leaves " +
                            show(leaves));
  return it->second;
}

MonoidalStructure strict_monoidal(const FinCategory& base, const Atom& unit,
                                  const std::function<Atom(const Atom&, const Atom&)>& obj_op,
                                  const std::function<Atom(const Atom&, const Atom&)>& mor_op,
                                  std::size_t arity_bound) {
  if (!base.has_object(unit)) incompatible("strict unit " + unit + " is not an object of the base");
  MonoidalStructure m;
  m.base = base;
  m.arity_bound = arity_bound;
  m.tensor_obj.resize(arity_bound + 1);
  m.tensor_mor.resize(arity_bound + 1);
  EnumGuard guard("strict monoidal tables");
  const std::vector<Atom> mors = base.morphisms();
  for (std::size_t n = 0; n <= arity_bound; ++n) {
    for (const Key& xs : object_tuples(base, n, guard)) {
      Atom acc = unit;
      for (std::size_t i = 0; i < xs.size(); ++i) acc = i == 0 ? xs[0] : obj_op(acc, xs[i]);
      m.tensor_obj[n][xs] = acc;
    }
    for (const Key& as : tuples_over(mors, n, guard)) {
      Atom acc = base.id(unit);
      for (std::size_t i = 0; i < as.size(); ++i) acc = i == 0 ? as[0] : mor_op(acc, as[i]);
      m.tensor_mor[n][as] = acc;
    }
  }
  for (const Atom& x : base.objects) m.unitor[x] = base.id(x);
  for (const Shape& s : shapes_within(arity_bound))
    for (const Key& leaves : object_tuples(base, shape_total(s), guard))
      m.associator[{s, leaves}] = base.id(m.tensor_of(leaves));
  return m;
}

std::vector<Shape> shapes_within(std::size_t bound) {
  std::vector<Shape> out;
  for (std::size_t size = 0; size <= bound; ++size) {
    Shape s(size, 0);
    while (true) {
      if (shape_total(s) <= bound) out.push_back(s);
      std::size_t i = size;
      while (i > 0 && s[i - 1] == bound) s[--i] = 0;
      if (i == 0) break;
      ++s[i - 1];
    }
  }
  return out;
}

std::vector<std::string> validate_monoidal(const MonoidalStructure& m) {
  std::vector<std::string> report;
  const FinCategory& base = m.base;
  const std::size_t bound = m.arity_bound;
  EnumGuard guard("monoidal validation");

  if (m.tensor_obj.size() != bound + 1 || m.tensor_mor.size() != bound + 1) {
    report.push_back("tensor tables must have one level per arity 0.." + std::to_string(bound));
    return report;
  }

  const std::vector<Atom> mors = base.morphisms();
  const std::vector<Shape> shapes = shapes_within(bound);

  // Totality and well-formedness; the later phases use the throwing accessors,
  // so return as soon as a table is unusable.
  for (std::size_t n = 0; n <= bound; ++n) {
    for (const Key& xs : object_tuples(base, n, guard)) {
      auto it = m.tensor_obj[n].find(xs);
      if (it == m.tensor_obj[n].end())
        report.push_back("object tensor of arity " + std::to_string(n) + " missing at " +
                         show(xs));
      else if (!base.has_object(it->second))
        report.push_back("object tensor at " + show(xs) + " is not an object: " + it->second);
    }
    for (const Key& as : tuples_over(mors, n, guard)) {
      auto it = m.tensor_mor[n].find(as);
      if (it == m.tensor_mor[n].end())
        report.push_back("morphism tensor of arity " + std::to_string(n) + " missing at " +
                         show(as));
      else if (!base.has_morphism(it->second))
        report.push_back("morphism tensor at " + show(as) + " is not a morphism: " + it->second);
    }
  }
  for (const Atom& x : base.objects)
    if (!m.unitor.count(x))
      report.push_back("unitor missing at " + x);
    else if (!base.has_morphism(m.unitor.at(x)))
      report.push_back("unitor at " + x + " is not a morphism: " + m.unitor.at(x));
  for (const Shape& s : shapes)
    for (const Key& leaves : object_tuples(base, shape_total(s), guard)) {
      auto it = m.associator.find({s, leaves});
      if (it == m.associator.end())
        report.push_back("associator missing at shape " + show(s) + " leaves " + show(leaves));
      else if (!base.has_morphism(it->second))
        report.push_back("associator at shape " + show(s) + " leaves " + show(leaves) +
                         " is not a morphism: " + it->second);
    }
  if (!report.empty()) return report;

  // Typing.
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& as : tuples_over(mors, n, guard)) {
      const Atom& t = m.tensor_map(as);
      if (base.dom(t) != m.tensor_of(doms_of(base, as)) ||
          base.cod(t) != m.tensor_of(cods_of(base, as)))
        report.push_back("morphism tensor at " + show(as) + " has the wrong endpoints");
    }
  for (const Atom& x : base.objects) {
    const Atom& u = m.unitor_at(x);
    if (base.dom(u) != x || base.cod(u) != m.tensor_of({x}))
      report.push_back("unitor at " + x + " is not a morphism " + x + " -> tensor_1(" + x + ")");
  }
  for (const Shape& s : shapes)
    for (const Key& leaves : object_tuples(base, shape_total(s), guard)) {
      const Atom& comp = m.assoc(s, leaves);
      Key inner;
      inner.reserve(s.size());
      for (const Key& g : split_groups(s, leaves)) inner.push_back(m.tensor_of(g));
      if (base.dom(comp) != m.tensor_of(inner) || base.cod(comp) != m.tensor_of(leaves))
        report.push_back("associator at shape " + show(s) + " leaves " + show(leaves) +
                         " has the wrong endpoints");
    }
  if (!report.empty()) return report;

  // Functoriality of each tensor level.
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(base, n, guard))
      if (m.tensor_map(ids_of(base, xs)) != base.id(m.tensor_of(xs)))
        report.push_back("tensor of identities at " + show(xs) + " is not the identity");
  std::vector<AtomPair> comp_pairs;
  comp_pairs.reserve(base.comp.size());
  for (const auto& [gf, h] : base.comp) comp_pairs.push_back(gf);
  for (std::size_t n = 0; n <= bound; ++n) {
    const std::vector<std::size_t> sizes(n, comp_pairs.size());
    for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
      Key gs, fs, hs;
      for (std::size_t i = 0; i < n; ++i) {
        const AtomPair& gf = comp_pairs[idx[i]];
        gs.push_back(gf.first);
        fs.push_back(gf.second);
        hs.push_back(base.compose(gf.first, gf.second));
      }
      if (m.tensor_map(hs) != base.compose(m.tensor_map(gs), m.tensor_map(fs)))
        report.push_back("tensor does not preserve composition at " + show(gs) + " after " +
                         show(fs));
    });
  }

  // Naturality of the unitor and of every associator component family.
  for (const Atom& a : mors)
    if (base.compose(m.tensor_map({a}), m.unitor_at(base.dom(a))) !=
        base.compose(m.unitor_at(base.cod(a)), a))
      report.push_back("unitor is not natural at " + a);
  for (const Shape& s : shapes)
    for (const Key& as : tuples_over(mors, shape_total(s), guard)) {
      Key inner;
      inner.reserve(s.size());
      for (const Key& g : split_groups(s, as)) inner.push_back(m.tensor_map(g));
      const Atom lhs = base.compose(m.assoc(s, cods_of(base, as)), m.tensor_map(inner));
      const Atom rhs = base.compose(m.tensor_map(as), m.assoc(s, doms_of(base, as)));
      if (lhs != rhs)
        report.push_back("associator is not natural at shape " + show(s) + " morphisms " +
                         show(as));
    }

  // Unit coherence: collapsing per-leaf unitors, and the unitor at a tensor.
  for (std::size_t n = 0; n <= bound; ++n) {
    const Shape ones(n, 1);
    for (const Key& xs : object_tuples(base, n, guard)) {
      Key units;
      units.reserve(n);
      for (const Atom& x : xs) units.push_back(m.unitor_at(x));
      const Atom& whole = m.tensor_of(xs);
      if (base.compose(m.assoc(ones, xs), m.tensor_map(units)) != base.id(whole))
        report.push_back("unit coherence (leafwise) fails at " + show(xs));
      if (base.compose(m.assoc(Shape{n}, xs), m.unitor_at(whole)) != base.id(whole))
        report.push_back("unit coherence (outer) fails at " + show(xs));
    }
  }

  // Associativity coherence: both reassociations of a doubly nested tensor
  // agree, for every middle shape and every splitting of its slots.
  for (const Shape& mid : shapes) {
    const std::size_t middle_arity = shape_total(mid);
    for (const Shape& flat : shapes) {
      if (flat.size() != middle_arity) continue;
      const std::vector<Shape> rows = split_shape(mid, flat);
      Shape row_sums;
      row_sums.reserve(rows.size());
      for (const Shape& r : rows) row_sums.push_back(shape_total(r));
      for (const Key& xs : object_tuples(base, shape_total(flat), guard)) {
        Key slot_assocs;
        slot_assocs.reserve(rows.size());
        std::size_t offset = 0;
        for (const Shape& r : rows) {
          const Key row_leaves(xs.begin() + offset, xs.begin() + offset + shape_total(r));
          offset += shape_total(r);
          slot_assocs.push_back(m.assoc(r, row_leaves));
        }
        Key mids;
        mids.reserve(flat.size());
        for (const Key& g : split_groups(flat, xs)) mids.push_back(m.tensor_of(g));
        const Atom path_a = base.compose(m.assoc(row_sums, xs), m.tensor_map(slot_assocs));
        const Atom path_b = base.compose(m.assoc(flat, xs), m.assoc(mid, mids));
        if (path_a != path_b)
          report.push_back("associativity coherence fails at shapes " + show(mid) + " over " +
                           show(flat) + " leaves " + show(xs));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Monoidal functors
// ---------------------------------------------------------------------------

LaxMonoidalFunctor identity_lax(const MonoidalStructure& m) {
  LaxMonoidalFunctor out;
  out.underlying = identity_functor(m.base);
  out.flavor = LaxMonoidalFunctor::Flavor::pseudo;
  EnumGuard guard("identity monoidal structure");
  for (std::size_t n = 0; n <= m.arity_bound; ++n)
    for (const Key& xs : object_tuples(m.base, n, guard))
      out.compositors[xs] = m.base.id(m.tensor_of(xs));
  return out;
}

LaxMonoidalFunctor compose_lax(const LaxMonoidalFunctor& g, const LaxMonoidalFunctor& f) {
  using Flavor = LaxMonoidalFunctor::Flavor;
  if (f.underlying.target != g.underlying.source)
    incompatible("compose_lax: the underlying functors are not composable");
  const bool can_lax = f.flavor != Flavor::colax && g.flavor != Flavor::colax;
  const bool can_colax = f.flavor != Flavor::lax && g.flavor != Flavor::lax;
  if (!can_lax && !can_colax) incompatible("compose_lax: mixed lax/colax flavors do not compose");
  LaxMonoidalFunctor out;
  out.underlying = compose_functors(g.underlying, f.underlying);
  out.flavor = can_lax && can_colax ? Flavor::pseudo : can_lax ? Flavor::lax : Flavor::colax;
  const FinCategory& c = g.underlying.target;
  for (const auto& [xs, fc] : f.compositors) {
    Key fxs;
    fxs.reserve(xs.size());
    for (const Atom& x : xs) fxs.push_back(f.underlying.ob(x));
    const Atom& gc = g.compositors.at(fxs);
    out.compositors[xs] =
        can_lax ? c.compose(g.underlying.mor(fc), gc) : c.compose(gc, g.underlying.mor(fc));
  }
  return out;
}

std::vector<std::string> validate_lax_functor(const LaxMonoidalFunctor& f,
                                              const MonoidalStructure& src,
                                              const MonoidalStructure& tgt) {
  std::vector<std::string> report;
  if (f.underlying.source != src.base || f.underlying.target != tgt.base) {
    report.push_back("underlying functor does not match the given structures");
    return report;
  }
  const bool colax = !lax_direction(f.flavor);
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  const FinCategory& c = tgt.base;
  EnumGuard guard("monoidal functor validation");

  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(src.base, n, guard)) {
      auto it = f.compositors.find(xs);
      if (it == f.compositors.end()) {
        report.push_back("compositor missing at " + show(xs));
        continue;
      }
      Key fxs;
      fxs.reserve(n);
      for (const Atom& x : xs) fxs.push_back(f.underlying.ob(x));
      const Atom& image = f.underlying.ob(src.tensor_of(xs));
      const Atom& tensored = tgt.tensor_of(fxs);
      const Atom& from = colax ? image : tensored;
      const Atom& to = colax ? tensored : image;
      if (!c.has_morphism(it->second) || c.dom(it->second) != from || c.cod(it->second) != to)
        report.push_back("compositor at " + show(xs) + " is not a morphism " + from + " -> " + to);
    }
  if (!report.empty()) return report;

  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& as : morphism_tuples(src.base, n, guard)) {
      Key fas;
      fas.reserve(n);
      for (const Atom& a : as) fas.push_back(f.underlying.mor(a));
      const Key xs = doms_of(src.base, as);
      const Key ys = cods_of(src.base, as);
      const Atom& inside = f.underlying.mor(src.tensor_map(as));
      const Atom lhs = colax ? c.compose(tgt.tensor_map(fas), f.compositors.at(xs))
                             : c.compose(f.compositors.at(ys), tgt.tensor_map(fas));
      const Atom rhs = colax ? c.compose(f.compositors.at(ys), inside)
                             : c.compose(inside, f.compositors.at(xs));
      if (lhs != rhs) report.push_back("compositor is not natural at " + show(as));
    }

  for (const Shape& s : shapes_within(bound))
    for (const Key& xs : object_tuples(src.base, shape_total(s), guard)) {
      Key inner_src, inner_cmp, fxs;
      for (const Key& g : split_groups(s, xs)) {
        inner_src.push_back(src.tensor_of(g));
        inner_cmp.push_back(f.compositors.at(g));
      }
      fxs.reserve(xs.size());
      for (const Atom& x : xs) fxs.push_back(f.underlying.ob(x));
      const Atom& inside = f.underlying.mor(src.assoc(s, xs));
      const Atom lhs =
          colax ? c.compose(f.compositors.at(xs), inside)
                : c.compose(inside,
                            c.compose(f.compositors.at(inner_src), tgt.tensor_map(inner_cmp)));
      const Atom rhs =
          colax ? c.compose(tgt.assoc(s, fxs),
                            c.compose(tgt.tensor_map(inner_cmp), f.compositors.at(inner_src)))
                : c.compose(f.compositors.at(xs), tgt.assoc(s, fxs));
      if (lhs != rhs)
        report.push_back("associator compatibility fails at shape " + show(s) + " leaves " +
                         show(xs));
    }

  for (const Atom& x : src.base.objects) {
    const Atom& fx = f.underlying.ob(x);
    const Atom& inside = f.underlying.mor(src.unitor_at(x));
    const Atom lhs = colax ? tgt.unitor_at(fx) : inside;
    const Atom rhs = colax ? c.compose(f.compositors.at({x}), inside)
                           : c.compose(f.compositors.at({x}), tgt.unitor_at(fx));
    if (lhs != rhs) report.push_back("unitor compatibility fails at " + x);
  }

  if (f.flavor == LaxMonoidalFunctor::Flavor::pseudo)
    for (std::size_t n = 0; n <= bound; ++n)
      for (const Key& xs : object_tuples(src.base, n, guard))
        if (!two_sided_inverse(c, f.compositors.at(xs)))
          report.push_back("compositor at " + show(xs) + " has no two-sided inverse");
  return report;
}

// ---------------------------------------------------------------------------
// Monoidal profunctors and transformations
// ---------------------------------------------------------------------------

const Atom& MonoidalProfunctor::structure_of(const Key& elems) const {
  auto it = structure.find(elems);
  if (it == structure.end())
    throw std::out_of_range("monoidal: no profunctor structure entry at " + show(elems));
  return it->second;
}

MonoidalProfunctor hom_monoidal(const MonoidalStructure& m) {
  MonoidalProfunctor out;
  out.underlying = hom_profunctor(m.base);
  EnumGuard guard("hom monoidal structure");
  const std::vector<Atom> mors = m.base.morphisms();
  for (std::size_t n = 0; n <= m.arity_bound; ++n)
    for (const Key& as : tuples_over(mors, n, guard)) out.structure[as] = m.tensor_map(as);
  return out;
}

MonoidalProfunctor companion_monoidal(const LaxMonoidalFunctor& f, const MonoidalStructure& src,
                                      const MonoidalStructure& tgt) {
  using Flavor = LaxMonoidalFunctor::Flavor;
  if (f.flavor == Flavor::lax)
    incompatible("companion_monoidal: the structure needs a pseudo or colax functor");
  if (f.underlying.source != src.base || f.underlying.target != tgt.base)
    incompatible("companion_monoidal: functor does not match the structures");
  const CompanionResult comp = companion(f.underlying);
  const Profunctor& under = comp.restriction.profunctor;
  std::map<Atom, Atom> raw_of;
  std::map<std::tuple<Atom, Atom, Atom>, Atom> elem_of;  // (x, y, raw morphism) -> element
  for (const auto& [xy, fiber] : under.elems)
    for (const Atom& e : fiber) {
      const Atom& raw = comp.restriction.cartesian_cell.components.at(Key{e});
      raw_of[e] = raw;
      elem_of[{xy.first, xy.second, raw}] = e;
    }
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  const FinCategory& c = tgt.base;
  EnumGuard guard("companion monoidal structure");
  MonoidalProfunctor out;
  out.underlying = under;
  const std::vector<Atom> elems = under.all_elems();
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& es : tuples_over(elems, n, guard)) {
      Key xs, ys, raws;
      for (const Atom& e : es) {
        const AtomPair& p = under.position(e);
        xs.push_back(p.first);
        ys.push_back(p.second);
        raws.push_back(raw_of.at(e));
      }
      const Atom& cmp = f.compositors.at(xs);
      Atom reversed = cmp;
      if (f.flavor == Flavor::pseudo) {
        auto inv = two_sided_inverse(c, cmp);
        if (!inv)
          incompatible("companion_monoidal: compositor at " + show(xs) +
                       " has no two-sided inverse");
        reversed = *inv;
      }
      const Atom raw = c.compose(tgt.tensor_map(raws), reversed);
      out.structure[es] = elem_of.at({src.tensor_of(xs), tgt.tensor_of(ys), raw});
    }
  return out;
}

std::vector<std::string> validate_monoidal_profunctor(const MonoidalProfunctor& j,
                                                      const MonoidalStructure& src,
                                                      const MonoidalStructure& tgt) {
  std::vector<std::string> report;
  if (j.underlying.source != src.base || j.underlying.target != tgt.base) {
    report.push_back("underlying profunctor does not match the given structures");
    return report;
  }
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  EnumGuard guard("monoidal profunctor validation");
  const std::vector<Atom> elems = j.underlying.all_elems();

  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& es : tuples_over(elems, n, guard)) {
      auto it = j.structure.find(es);
      if (it == j.structure.end()) {
        report.push_back("structure missing at " + show(es));
        continue;
      }
      Key xs, ys;
      for (const Atom& e : es) {
        const AtomPair& p = j.underlying.position(e);
        xs.push_back(p.first);
        ys.push_back(p.second);
      }
      if (!j.underlying.has_elem(it->second) ||
          j.underlying.position(it->second) !=
              AtomPair{src.tensor_of(xs), tgt.tensor_of(ys)})
        report.push_back("structure at " + show(es) + " does not lie in the tensor fiber");
    }
  if (!report.empty()) return report;

  const auto into_src = morphisms_by_cod(src.base);
  const auto from_tgt = morphisms_by_dom(tgt.base);
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& es : tuples_over(elems, n, guard)) {
      Key xs, ys;
      for (const Atom& e : es) {
        const AtomPair& p = j.underlying.position(e);
        xs.push_back(p.first);
        ys.push_back(p.second);
      }
      std::vector<std::size_t> in_sizes, out_sizes;
      for (std::size_t i = 0; i < n; ++i) {
        in_sizes.push_back(into_src.at(xs[i]).size());
        out_sizes.push_back(from_tgt.at(ys[i]).size());
      }
      for_each_choice(in_sizes, guard, [&](const std::vector<std::size_t>& idx) {
        Key as, acted;
        for (std::size_t i = 0; i < n; ++i) {
          const Atom& a = into_src.at(xs[i])[idx[i]];
          as.push_back(a);
          acted.push_back(j.underlying.left(a, es[i]));
        }
        if (j.structure_of(acted) != j.underlying.left(src.tensor_map(as), j.structure_of(es)))
          report.push_back("left equivariance fails at " + show(es) + " along " + show(as));
      });
      for_each_choice(out_sizes, guard, [&](const std::vector<std::size_t>& idx) {
        Key bs, acted;
        for (std::size_t i = 0; i < n; ++i) {
          const Atom& b = from_tgt.at(ys[i])[idx[i]];
          bs.push_back(b);
          acted.push_back(j.underlying.right(es[i], b));
        }
        if (j.structure_of(acted) != j.underlying.right(j.structure_of(es), tgt.tensor_map(bs)))
          report.push_back("right equivariance fails at " + show(es) + " along " + show(bs));
      });
    }

  for (const Shape& s : shapes_within(bound))
    for (const Key& es : tuples_over(elems, shape_total(s), guard)) {
      Key inner;
      inner.reserve(s.size());
      for (const Key& g : split_groups(s, es)) inner.push_back(j.structure_of(g));
      Key xs, ys;
      for (const Atom& e : es) {
        const AtomPair& p = j.underlying.position(e);
        xs.push_back(p.first);
        ys.push_back(p.second);
      }
      const Atom lhs = j.underlying.right(j.structure_of(inner), tgt.assoc(s, ys));
      const Atom rhs = j.underlying.left(src.assoc(s, xs), j.structure_of(es));
      if (lhs != rhs)
        report.push_back("associativity fails at shape " + show(s) + " elements " + show(es));
    }

  for (const Atom& e : elems) {
    const AtomPair& p = j.underlying.position(e);
    if (j.underlying.left(src.unitor_at(p.first), j.structure_of({e})) !=
        j.underlying.right(e, tgt.unitor_at(p.second)))
      report.push_back("unit axiom fails at " + e);
  }
  return report;
}

std::vector<std::string> validate_monoidal_transformation(const NatTransformation& xi,
                                                          const LaxMonoidalFunctor& f,
                                                          const LaxMonoidalFunctor& g,
                                                          const MonoidalStructure& src,
                                                          const MonoidalStructure& tgt) {
  std::vector<std::string> report;
  if (lax_direction(f.flavor) != lax_direction(g.flavor)) {
    report.push_back("the functors disagree about the compositor direction");
    return report;
  }
  if (xi.source != f.underlying || xi.target != g.underlying) {
    report.push_back("transformation endpoints do not match the given functors");
    return report;
  }
  for (const std::string& e : validate_nat_transformation(xi)) report.push_back(e);
  if (!report.empty()) return report;

  const bool colax = !lax_direction(f.flavor);
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  const FinCategory& c = tgt.base;
  EnumGuard guard("monoidal transformation validation");
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(src.base, n, guard)) {
      Key comps;
      comps.reserve(n);
      for (const Atom& x : xs) comps.push_back(xi.components.at(x));
      const Atom& tensored = tgt.tensor_map(comps);
      const Atom& at_tensor = xi.components.at(src.tensor_of(xs));
      const Atom lhs = colax ? c.compose(tensored, f.compositors.at(xs))
                             : c.compose(g.compositors.at(xs), tensored);
      const Atom rhs = colax ? c.compose(g.compositors.at(xs), at_tensor)
                             : c.compose(at_tensor, f.compositors.at(xs));
      if (lhs != rhs) report.push_back("monoidal axiom fails at " + show(xs));
    }
  return report;
}

// ---------------------------------------------------------------------------
// Day convolution
// ---------------------------------------------------------------------------

namespace {

/// A raw convolution element (u̲, s: x → ⊗u̲, v̲ with vᵢ ∈ pᵢ(uᵢ)) and the
/// per-object quotient that turns raw triples into coend classes. For n = 0
/// the classes are the morphisms x → e themselves.
struct DayElem {
  Key objs;
  Atom s;
  Key vals;
};

struct DayData {
  std::size_t arity = 0;
  Presheaf presheaf;
  std::map<Atom, FinFunction> proj;           // object -> raw atoms -> classes
  std::map<Atom, DayElem> decode;             // raw atom -> its triple
  std::map<Atom, std::vector<Atom>> members;  // class atom -> raw members
};

Atom day_raw(std::size_t n, const Key& objs, const Atom& s, const Key& vals) {
  if (n == 0) return s;
  std::vector<std::string> parts;
  parts.reserve(1 + objs.size() + vals.size());
  parts.push_back(s);
  parts.insert(parts.end(), objs.begin(), objs.end());
  parts.insert(parts.end(), vals.begin(), vals.end());
  return mint("day", parts);
}

DayData day_data(const MonoidalStructure& m, const std::vector<Presheaf>& ps) {
  const std::size_t n = ps.size();
  const FinCategory& base = m.base;
  DayData out;
  out.arity = n;
  if (n == 0) {
    out.presheaf = yoneda_object(base, m.unit_object());
    for (const Atom& x : base.objects) {
      const FinSet& fiber = out.presheaf.at(x);
      FinFunction id{fiber, fiber, {}};
      for (const Atom& s : fiber) {
        id.table[s] = s;
        out.decode[s] = DayElem{{}, s, {}};
        out.members[s] = {s};
      }
      out.proj[x] = std::move(id);
    }
    return out;
  }

  EnumGuard guard("day convolution");
  const std::vector<Key> obj_tuples = object_tuples(base, n, guard);
  const std::vector<Key> mor_tuples = morphism_tuples(base, n, guard);

  out.presheaf.base = base;
  for (const Atom& x : base.objects) {
    std::vector<Atom> raws;
    for (const Key& us : obj_tuples) {
      const FinSet& ss = base.hom_set(x, m.tensor_of(us));
      if (ss.empty()) continue;
      std::vector<std::size_t> sizes;
      sizes.reserve(n);
      for (std::size_t i = 0; i < n; ++i) sizes.push_back(ps[i].at(us[i]).size());
      for (const Atom& s : ss)
        for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
          Key vs;
          vs.reserve(n);
          for (std::size_t i = 0; i < n; ++i) vs.push_back(ps[i].at(us[i]).elems[idx[i]]);
          const Atom r = day_raw(n, us, s, vs);
          raws.push_back(r);
          out.decode[r] = DayElem{us, s, vs};
        });
    }

    std::vector<AtomPair> pairs;
    for (const Key& as : mor_tuples) {
      const Key us = doms_of(base, as);
      const Key vs = cods_of(base, as);
      const FinSet& ss = base.hom_set(x, m.tensor_of(us));
      if (ss.empty()) continue;
      const Atom& ta = m.tensor_map(as);
      std::vector<std::size_t> sizes;
      sizes.reserve(n);
      for (std::size_t i = 0; i < n; ++i) sizes.push_back(ps[i].at(vs[i]).size());
      for (const Atom& s : ss) {
        const Atom moved = base.compose(ta, s);
        for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
          Key high, low;
          high.reserve(n);
          low.reserve(n);
          for (std::size_t i = 0; i < n; ++i) {
            const Atom& v = ps[i].at(vs[i]).elems[idx[i]];
            high.push_back(v);
            low.push_back(ps[i].act(as[i], v));
          }
          pairs.push_back({day_raw(n, us, s, low), day_raw(n, vs, moved, high)});
        });
      }
    }

    QuotientResult qr = quotient(FinSet(raws), pairs);
    out.presheaf.values[x] = qr.classes;
    for (const Atom& r : raws) out.members[qr.projection(r)].push_back(r);
    out.proj[x] = std::move(qr.projection);
  }

  // Contravariant action: pre-compose the mediating morphism; the class of
  // the result does not depend on the chosen representative.
  for (const Atom& b : base.morphisms()) {
    const Atom& x = base.cod(b);
    const Atom& w = base.dom(b);
    for (const Atom& cls : out.presheaf.at(x)) {
      std::optional<Atom> image;
      for (const Atom& r : out.members.at(cls)) {
        const DayElem& de = out.decode.at(r);
        const Atom cand = out.proj.at(w)(day_raw(n, de.objs, base.compose(de.s, b), de.vals));
        if (!image)
          image = cand;
        else if (*image != cand)
          throw std::logic_error("monoidal: day convolution action is not constant on a class");
      }
      out.presheaf.action[{b, cls}] = *image;
    }
  }
  return out;
}

void check_day_inputs(const MonoidalStructure& m, const std::vector<Presheaf>& ps, std::size_t n,
                      const std::string& what) {
  if (n != ps.size()) incompatible(what + ": arity does not match the presheaf count");
  if (n > m.arity_bound) incompatible(what + ": arity exceeds the structure's bound");
  for (const Presheaf& p : ps)
    if (p.base != m.base) incompatible(what + ": presheaf lives on a different base");
}

/// The family p ⇒ ⊛₁(p) inserting v ∈ p(z) as the class of (z, unitor, v).
PresheafNat day_insertion_family(const MonoidalStructure& m, const Presheaf& p,
                                 const DayData& d1) {
  PresheafNat out;
  for (const Atom& z : m.base.objects) {
    auto& row = out[z];
    for (const Atom& v : p.at(z)) row[v] = d1.proj.at(z)(day_raw(1, {z}, m.unitor_at(z), {v}));
  }
  return out;
}

/// Post-composition family y(dom g) ⇒ y(cod g) of a representable.
PresheafNat postcompose_family(const FinCategory& base, const Presheaf& source, const Atom& g) {
  PresheafNat out;
  for (const Atom& z : base.objects) {
    auto& row = out[z];
    for (const Atom& t : source.at(z)) row[t] = base.compose(g, t);
  }
  return out;
}

}  // namespace

Presheaf day_convolution(const MonoidalStructure& m, const std::vector<Presheaf>& ps,
                         std::size_t n) {
  check_day_inputs(m, ps, n, "day convolution");
  return day_data(m, ps).presheaf;
}

PresheafNat day_map(const MonoidalStructure& m, const std::vector<Presheaf>& ps,
                    const std::vector<Presheaf>& qs, const std::vector<PresheafNat>& ts,
                    std::size_t n) {
  check_day_inputs(m, ps, n, "day map");
  check_day_inputs(m, qs, n, "day map");
  if (ts.size() != n) incompatible("day map: family count does not match the arity");
  const DayData src = day_data(m, ps);
  const DayData dst = day_data(m, qs);
  PresheafNat out;
  for (const Atom& x : m.base.objects) {
    auto& row = out[x];
    for (const Atom& cls : src.presheaf.at(x)) {
      std::optional<Atom> image;
      for (const Atom& r : src.members.at(cls)) {
        const DayElem& de = src.decode.at(r);
        Key ws;
        ws.reserve(n);
        for (std::size_t i = 0; i < n; ++i) ws.push_back(ts[i].at(de.objs[i]).at(de.vals[i]));
        const Atom cand = dst.proj.at(x)(day_raw(n, de.objs, de.s, ws));
        if (!image)
          image = cand;
        else if (*image != cand)
          throw std::logic_error(
              "monoidal: day map image is not constant on a class (the input families are not "
              "natural)");
      }
      row[cls] = *image;
    }
  }
  return out;
}

DayIso day_flatten_iso(const MonoidalStructure& m, const std::vector<DaySlot>& slots) {
  const FinCategory& base = m.base;
  const std::size_t n = slots.size();
  if (n > m.arity_bound) incompatible("day flatten: outer arity exceeds the structure's bound");
  std::vector<Presheaf> outer_ps;
  std::vector<std::optional<DayData>> inner(n);
  std::vector<Presheaf> leaves;
  Shape shape;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Presheaf& p : slots[i].group)
      if (p.base != base) incompatible("day flatten: presheaf lives on a different base");
    if (slots[i].convolved) {
      if (slots[i].group.size() > m.arity_bound)
        incompatible("day flatten: inner arity exceeds the structure's bound");
      inner[i] = day_data(m, slots[i].group);
      outer_ps.push_back(inner[i]->presheaf);
      shape.push_back(slots[i].group.size());
      leaves.insert(leaves.end(), slots[i].group.begin(), slots[i].group.end());
    } else {
      if (slots[i].group.size() != 1)
        incompatible("day flatten: a plain slot holds exactly one presheaf");
      outer_ps.push_back(slots[i].group[0]);
      shape.push_back(1);
      leaves.push_back(slots[i].group[0]);
    }
  }
  if (leaves.size() > m.arity_bound)
    incompatible("day flatten: flattened arity exceeds the structure's bound");
  const DayData outer = day_data(m, outer_ps);
  const DayData flat = day_data(m, leaves);
  const std::size_t total = leaves.size();

  DayIso iso;
  iso.source = outer.presheaf;
  iso.target = flat.presheaf;
  EnumGuard guard("day flatten");

  for (const Atom& x : base.objects) {
    auto& row = iso.forward[x];
    for (const Atom& cls : outer.presheaf.at(x)) {
      std::optional<Atom> image;
      for (const Atom& r : outer.members.at(cls)) {
        const DayElem& de = outer.decode.at(r);
        std::vector<const std::vector<Atom>*> reps(n);
        std::vector<Atom> plain(n);
        std::vector<std::size_t> sizes(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (inner[i]) {
            reps[i] = &inner[i]->members.at(de.vals[i]);
            sizes[i] = reps[i]->size();
          } else {
            plain[i] = de.vals[i];
            sizes[i] = 1;
          }
        }
        for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
          Key slot_mors, flat_objs, flat_vals;
          for (std::size_t i = 0; i < n; ++i) {
            if (inner[i]) {
              const DayElem& ie = inner[i]->decode.at((*reps[i])[idx[i]]);
              slot_mors.push_back(ie.s);
              flat_objs.insert(flat_objs.end(), ie.objs.begin(), ie.objs.end());
              flat_vals.insert(flat_vals.end(), ie.vals.begin(), ie.vals.end());
            } else {
              slot_mors.push_back(m.unitor_at(de.objs[i]));
              flat_objs.push_back(de.objs[i]);
              flat_vals.push_back(plain[i]);
            }
          }
          const Atom moved = base.compose(m.assoc(shape, flat_objs),
                                          base.compose(m.tensor_map(slot_mors), de.s));
          const Atom cand = flat.proj.at(x)(day_raw(total, flat_objs, moved, flat_vals));
          if (!image)
            image = cand;
          else if (*image != cand)
            throw std::logic_error("monoidal: day flatten forward is not constant on a class");
        });
      }
      row[cls] = *image;
    }
  }

  InverseCache inverses{base, {}};
  std::set<std::string> missing;
  for (const Atom& x : base.objects) {
    auto& row = iso.backward[x];
    for (const Atom& cls : flat.presheaf.at(x)) {
      std::optional<Atom> image;
      for (const Atom& r : flat.members.at(cls)) {
        const DayElem& de = flat.decode.at(r);
        const auto& ia = inverses.of(m.assoc(shape, de.objs));
        if (!ia) {
          missing.insert("no inverse for the associator at shape " + show(shape) + " leaves " +
                         show(de.objs));
          continue;
        }
        const std::vector<Key> groups_obj = split_groups(shape, de.objs);
        const std::vector<Key> groups_val = split_groups(shape, de.vals);
        Key unwraps, slot_objs, ws;
        bool blocked = false;
        for (std::size_t i = 0; i < n && !blocked; ++i) {
          if (inner[i]) {
            const Atom& u = m.tensor_of(groups_obj[i]);
            slot_objs.push_back(u);
            unwraps.push_back(base.id(u));
            ws.push_back(inner[i]->proj.at(u)(
                day_raw(shape[i], groups_obj[i], base.id(u), groups_val[i])));
          } else {
            const Atom& u = groups_obj[i][0];
            const auto& iu = inverses.of(m.unitor_at(u));
            if (!iu) {
              missing.insert("no inverse for the unitor at " + u);
              blocked = true;
              break;
            }
            slot_objs.push_back(u);
            unwraps.push_back(*iu);
            ws.push_back(groups_val[i][0]);
          }
        }
        if (blocked) continue;
        const Atom moved = base.compose(m.tensor_map(unwraps), base.compose(*ia, de.s));
        const Atom cand = outer.proj.at(x)(day_raw(n, slot_objs, moved, ws));
        if (!image)
          image = cand;
        else if (*image != cand)
          throw std::logic_error("monoidal: day flatten backward is not constant on a class");
      }
      if (image) row[cls] = *image;
    }
  }

  for (const std::string& e : check_natural(outer.presheaf, flat.presheaf, iso.forward))
    iso.report.push_back("forward: " + e);
  for (const std::string& e : missing) iso.report.push_back("backward: " + e);
  if (missing.empty()) {
    for (const std::string& e : check_natural(flat.presheaf, outer.presheaf, iso.backward))
      iso.report.push_back("backward: " + e);
    if (compose_presheaf_nat(iso.backward, iso.forward) != identity_presheaf_nat(outer.presheaf))
      iso.report.push_back("the source round trip is not the identity");
    if (compose_presheaf_nat(iso.forward, iso.backward) != identity_presheaf_nat(flat.presheaf))
      iso.report.push_back("the target round trip is not the identity");
  }
  return iso;
}

DayIso day_singleton_iso(const MonoidalStructure& m, const Presheaf& p) {
  if (p.base != m.base) incompatible("day singleton: presheaf lives on a different base");
  if (m.arity_bound < 1) incompatible("day singleton: the structure has no unary tensor");
  const FinCategory& base = m.base;
  const DayData d = day_data(m, {p});

  DayIso iso;
  iso.source = d.presheaf;
  iso.target = p;
  InverseCache inverses{base, {}};
  std::set<std::string> missing;
  for (const Atom& x : base.objects) {
    auto& row = iso.forward[x];
    for (const Atom& cls : d.presheaf.at(x)) {
      std::optional<Atom> image;
      for (const Atom& r : d.members.at(cls)) {
        const DayElem& de = d.decode.at(r);
        const auto& iu = inverses.of(m.unitor_at(de.objs[0]));
        if (!iu) {
          missing.insert("no inverse for the unitor at " + de.objs[0]);
          continue;
        }
        const Atom cand = p.act(base.compose(*iu, de.s), de.vals[0]);
        if (!image)
          image = cand;
        else if (*image != cand)
          throw std::logic_error("monoidal: day singleton forward is not constant on a class");
      }
      if (image) row[cls] = *image;
    }
  }
  iso.backward = day_insertion_family(m, p, d);

  for (const std::string& e : check_natural(p, d.presheaf, iso.backward))
    iso.report.push_back("backward: " + e);
  for (const std::string& e : missing) iso.report.push_back("forward: " + e);
  if (missing.empty()) {
    for (const std::string& e : check_natural(d.presheaf, p, iso.forward))
      iso.report.push_back("forward: " + e);
    if (compose_presheaf_nat(iso.backward, iso.forward) != identity_presheaf_nat(d.presheaf))
      iso.report.push_back("the source round trip is not the identity");
    if (compose_presheaf_nat(iso.forward, iso.backward) != identity_presheaf_nat(p))
      iso.report.push_back("the target round trip is not the identity");
  }
  return iso;
}

DayIso day_unit_iso(const MonoidalStructure& m, const Presheaf& p, bool unit_on_left) {
  if (m.arity_bound < 2) incompatible("day unit: needs arity bound at least 2");
  const DaySlot unit_slot{{}, true};
  const DaySlot here{{p}, false};
  const std::vector<DaySlot> slots =
      unit_on_left ? std::vector<DaySlot>{unit_slot, here} : std::vector<DaySlot>{here, unit_slot};
  const DayIso flattened = day_flatten_iso(m, slots);
  const DayIso collapsed = day_singleton_iso(m, p);

  DayIso out;
  out.source = flattened.source;
  out.target = p;
  for (const std::string& e : flattened.report) out.report.push_back("flatten: " + e);
  for (const std::string& e : collapsed.report) out.report.push_back("collapse: " + e);
  if (!out.report.empty()) return out;
  out.forward = compose_presheaf_nat(collapsed.forward, flattened.forward);
  out.backward = compose_presheaf_nat(flattened.backward, collapsed.backward);
  if (compose_presheaf_nat(out.backward, out.forward) != identity_presheaf_nat(out.source))
    out.report.push_back("the source round trip is not the identity");
  if (compose_presheaf_nat(out.forward, out.backward) != identity_presheaf_nat(p))
    out.report.push_back("the target round trip is not the identity");
  return out;
}

// ---------------------------------------------------------------------------
// Monoidal Yoneda
// ---------------------------------------------------------------------------

MonoidalYonedaStructure yoneda_monoidal_structure(const MonoidalStructure& m) {
  const FinCategory& base = m.base;
  const std::size_t bound = m.arity_bound;
  EnumGuard guard("monoidal yoneda structure");
  MonoidalYonedaStructure out;

  std::map<Atom, Presheaf> reps;
  for (const Atom& x : base.objects) reps.emplace(x, yoneda_object(base, x));
  auto reps_of = [&](const Key& xs) {
    std::vector<Presheaf> ps;
    ps.reserve(xs.size());
    for (const Atom& x : xs) ps.push_back(reps.at(x));
    return ps;
  };

  std::map<Key, DayData> datas;
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(base, n, guard)) {
      DayData data = day_data(m, reps_of(xs));
      out.convolution[xs] = data.presheaf;
      const Atom& whole = m.tensor_of(xs);

      PresheafNat fwd, bwd;
      for (const Atom& z : base.objects) {
        auto& frow = fwd[z];
        auto& brow = bwd[z];
        for (const Atom& cls : data.presheaf.at(z)) {
          std::optional<Atom> image;
          bool constant = true;
          for (const Atom& r : data.members.at(cls)) {
            const DayElem& de = data.decode.at(r);
            const Atom cand = base.compose(m.tensor_map(de.vals), de.s);
            if (!image)
              image = cand;
            else if (*image != cand)
              constant = false;
          }
          if (!constant)
            out.report.push_back("tuple " + show(xs) +
                                 ": forward comparison is not constant on a class at " + z);
          frow[cls] = *image;
        }
        for (const Atom& t : base.hom_set(z, whole))
          brow[t] = data.proj.at(z)(day_raw(n, xs, t, ids_of(base, xs)));
      }
      for (const std::string& e :
           check_natural(data.presheaf, reps.at(whole), fwd))
        out.report.push_back("tuple " + show(xs) + ": forward: " + e);
      for (const std::string& e :
           check_natural(reps.at(whole), data.presheaf, bwd))
        out.report.push_back("tuple " + show(xs) + ": backward: " + e);
      if (compose_presheaf_nat(bwd, fwd) != identity_presheaf_nat(data.presheaf))
        out.report.push_back("tuple " + show(xs) + ": the convolution round trip is not the identity");
      if (compose_presheaf_nat(fwd, bwd) != identity_presheaf_nat(reps.at(whole)))
        out.report.push_back("tuple " + show(xs) + ": the representable round trip is not the identity");
      out.forward[xs] = std::move(fwd);
      out.backward[xs] = std::move(bwd);
      datas[xs] = std::move(data);
    }

  // Naturality of the comparison in the object tuple.
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& as : morphism_tuples(base, n, guard)) {
      const Key xs = doms_of(base, as);
      const Key ys = cods_of(base, as);
      std::vector<PresheafNat> ts;
      ts.reserve(n);
      for (const Atom& a : as) ts.push_back(postcompose_family(base, reps.at(base.dom(a)), a));
      const PresheafNat moved = day_map(m, reps_of(xs), reps_of(ys), ts, n);
      const PresheafNat lhs = compose_presheaf_nat(out.forward.at(ys), moved);
      const PresheafNat rhs = compose_presheaf_nat(
          postcompose_family(base, reps.at(m.tensor_of(xs)), m.tensor_map(as)),
          out.forward.at(xs));
      if (lhs != rhs) out.report.push_back("tuple naturality fails at " + show(as));
    }

  // Compatibility with the associators: compare against the canonical
  // comparison between the nested and the flat convolution.
  for (const Shape& s : shapes_within(bound)) {
    const std::size_t n = s.size();
    for (const Key& xs : object_tuples(base, shape_total(s), guard)) {
      const std::vector<Key> groups = split_groups(s, xs);
      Key mid;
      mid.reserve(n);
      std::vector<DaySlot> slots;
      std::vector<Presheaf> ps, qs;
      std::vector<PresheafNat> ts;
      for (const Key& g : groups) {
        mid.push_back(m.tensor_of(g));
        slots.push_back(DaySlot{reps_of(g), true});
        ps.push_back(out.convolution.at(g));
        ts.push_back(out.forward.at(g));
      }
      for (const Atom& x : mid) qs.push_back(reps.at(x));
      const DayIso flattened = day_flatten_iso(m, slots);
      for (const std::string& e : flattened.report)
        out.report.push_back("flatten at shape " + show(s) + " leaves " + show(xs) + ": " + e);
      const PresheafNat inner_fwd = day_map(m, ps, qs, ts, n);
      const PresheafNat lhs = compose_presheaf_nat(
          postcompose_family(base, reps.at(m.tensor_of(mid)), m.assoc(s, xs)),
          compose_presheaf_nat(out.forward.at(mid), inner_fwd));
      const PresheafNat rhs = compose_presheaf_nat(out.forward.at(xs), flattened.forward);
      if (lhs != rhs)
        out.report.push_back("associator coherence fails at shape " + show(s) + " leaves " +
                             show(xs));
    }
  }

  // Compatibility with the unitors (these live at arity 1).
  if (bound >= 1)
    for (const Atom& x : base.objects) {
      const PresheafNat ins = day_insertion_family(m, reps.at(x), datas.at(Key{x}));
      const PresheafNat lhs = compose_presheaf_nat(out.forward.at(Key{x}), ins);
      const PresheafNat rhs = postcompose_family(base, reps.at(x), m.unitor_at(x));
      if (lhs != rhs) out.report.push_back("unitor coherence fails at " + x);
    }
  return out;
}

MonoidalCurryResult monoidal_curry(const MonoidalProfunctor& j, const MonoidalStructure& src,
                                   const MonoidalStructure& tgt) {
  if (j.underlying.source != src.base || j.underlying.target != tgt.base)
    incompatible("monoidal_curry: profunctor does not match the structures");
  const FinCategory& a = src.base;
  const FinCategory& b = tgt.base;
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  EnumGuard guard("monoidal curry");

  MonoidalCurryResult out;
  out.curried = curry(j.underlying);
  if (!out.curried.exact)
    out.report.push_back("curry of the underlying profunctor is not exact");

  auto curried_of = [&](const Key& ys) {
    std::vector<Presheaf> ps;
    ps.reserve(ys.size());
    for (const Atom& y : ys) ps.push_back(out.curried.obj_map.at(y));
    return ps;
  };

  std::map<Key, DayData> datas;
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& ys : object_tuples(b, n, guard)) {
      DayData data = day_data(src, curried_of(ys));
      out.convolution[ys] = data.presheaf;
      const Presheaf& target = out.curried.obj_map.at(tgt.tensor_of(ys));

      PresheafNat cmp;
      bool invertible = true;
      for (const Atom& x : a.objects) {
        auto& row = cmp[x];
        for (const Atom& cls : data.presheaf.at(x)) {
          std::optional<Atom> image;
          bool constant = true;
          for (const Atom& r : data.members.at(cls)) {
            const DayElem& de = data.decode.at(r);
            const Atom cand = j.underlying.left(de.s, j.structure_of(de.vals));
            if (!image)
              image = cand;
            else if (*image != cand)
              constant = false;
          }
          if (!constant)
            out.report.push_back("compositor at tuple " + show(ys) +
                                 " is not constant on a class at " + x);
          row[cls] = *image;
        }
        std::set<Atom> hit;
        for (const auto& [cls, t] : row) hit.insert(t);
        if (hit.size() != row.size() || hit.size() != target.at(x).size()) invertible = false;
      }
      for (const std::string& e : check_natural(data.presheaf, target, cmp))
        out.report.push_back("compositor at tuple " + show(ys) + ": " + e);
      out.compositors[ys] = std::move(cmp);
      out.invertible[ys] = invertible;
      out.all_invertible = out.all_invertible && invertible;
      datas[ys] = std::move(data);
    }

  // Naturality of the compositor in the target tuple.
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& bs : morphism_tuples(b, n, guard)) {
      const Key ys = doms_of(b, bs);
      const Key zs = cods_of(b, bs);
      std::vector<PresheafNat> ts;
      ts.reserve(n);
      for (const Atom& g : bs) ts.push_back(out.curried.mor_map.at(g));
      const PresheafNat moved = day_map(src, curried_of(ys), curried_of(zs), ts, n);
      const PresheafNat lhs = compose_presheaf_nat(out.compositors.at(zs), moved);
      const PresheafNat rhs = compose_presheaf_nat(out.curried.mor_map.at(tgt.tensor_map(bs)),
                                                   out.compositors.at(ys));
      if (lhs != rhs) out.report.push_back("tuple naturality fails at " + show(bs));
    }

  // Compatibility with the associators of the target structure.
  for (const Shape& s : shapes_within(bound)) {
    const std::size_t n = s.size();
    for (const Key& ys : object_tuples(b, shape_total(s), guard)) {
      const std::vector<Key> groups = split_groups(s, ys);
      Key mid;
      mid.reserve(n);
      std::vector<DaySlot> slots;
      std::vector<Presheaf> ps;
      std::vector<PresheafNat> ts;
      for (const Key& g : groups) {
        mid.push_back(tgt.tensor_of(g));
        slots.push_back(DaySlot{curried_of(g), true});
        ps.push_back(out.convolution.at(g));
        ts.push_back(out.compositors.at(g));
      }
      const DayIso flattened = day_flatten_iso(src, slots);
      for (const std::string& e : flattened.report)
        out.report.push_back("flatten at shape " + show(s) + " tuple " + show(ys) + ": " + e);
      const PresheafNat inner_cmp = day_map(src, ps, curried_of(mid), ts, n);
      const PresheafNat lhs = compose_presheaf_nat(
          out.curried.mor_map.at(tgt.assoc(s, ys)),
          compose_presheaf_nat(out.compositors.at(mid), inner_cmp));
      const PresheafNat rhs = compose_presheaf_nat(out.compositors.at(ys), flattened.forward);
      if (lhs != rhs)
        out.report.push_back("associator coherence fails at shape " + show(s) + " tuple " +
                             show(ys));
    }
  }

  // Compatibility with the unitors of the target structure.
  if (bound >= 1)
    for (const Atom& y : b.objects) {
      const Presheaf& p = out.curried.obj_map.at(y);
      const PresheafNat ins = day_insertion_family(src, p, datas.at(Key{y}));
      const PresheafNat lhs = compose_presheaf_nat(out.compositors.at(Key{y}), ins);
      const PresheafNat& rhs = out.curried.mor_map.at(tgt.unitor_at(y));
      if (lhs != rhs) out.report.push_back("unitor coherence fails at " + y);
    }

  // The monoidal Yoneda lemma on this instance: the curry bijections
  // intertwine the Yoneda comparison with the compositors.
  const MonoidalYonedaStructure ymc = yoneda_monoidal_structure(src);
  for (const std::string& e : ymc.report) out.report.push_back("yoneda structure: " + e);
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& xs : object_tuples(a, n, guard))
      for (const Key& ys : object_tuples(b, n, guard)) {
        std::vector<std::size_t> sizes;
        sizes.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
          sizes.push_back(j.underlying.at(xs[i], ys[i]).size());
        std::vector<Presheaf> rep_ps;
        rep_ps.reserve(n);
        for (const Atom& x : xs) rep_ps.push_back(yoneda_object(a, x));
        for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
          Key us;
          us.reserve(n);
          for (std::size_t i = 0; i < n; ++i)
            us.push_back(j.underlying.at(xs[i], ys[i]).elems[idx[i]]);
          const PresheafNat& lhs =
              out.curried.bijections.at({src.tensor_of(xs), tgt.tensor_of(ys)})
                  .at(j.structure_of(us));
          std::vector<PresheafNat> ts;
          ts.reserve(n);
          for (std::size_t i = 0; i < n; ++i)
            ts.push_back(out.curried.bijections.at({xs[i], ys[i]}).at(us[i]));
          const PresheafNat moved = day_map(src, rep_ps, curried_of(ys), ts, n);
          const PresheafNat rhs = compose_presheaf_nat(
              out.compositors.at(ys), compose_presheaf_nat(moved, ymc.backward.at(xs)));
          if (lhs != rhs)
            out.report.push_back("monoidal yoneda intertwining fails at elements " + show(us));
        });
      }
  return out;
}

CheckResult monoidal_beck_chevalley(const MonoidalProfunctor& j, const MonoidalStructure& src,
                                    const MonoidalStructure& tgt) {
  if (j.underlying.source != src.base || j.underlying.target != tgt.base)
    incompatible("monoidal_beck_chevalley: profunctor does not match the structures");
  const FinCategory& a = src.base;
  const FinCategory& b = tgt.base;
  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  EnumGuard guard("beck-chevalley check");

  auto bc_raw = [](const Atom& s, const Key& us, const Key& qs) {
    std::vector<std::string> parts;
    parts.reserve(1 + us.size() + qs.size());
    parts.push_back(s);
    parts.insert(parts.end(), us.begin(), us.end());
    parts.insert(parts.end(), qs.begin(), qs.end());
    return mint("bc", parts);
  };

  for (std::size_t n = 0; n <= bound; ++n) {
    const std::vector<Key> obj_tuples = object_tuples(a, n, guard);
    const std::vector<Key> mor_tuples = morphism_tuples(a, n, guard);
    for (const Key& ys : object_tuples(b, n, guard)) {
      const Atom& whole = tgt.tensor_of(ys);
      for (const Atom& x : a.objects) {
        std::vector<Atom> raws;
        std::map<Atom, std::tuple<Key, Atom, Key>> decode;
        for (const Key& us : obj_tuples) {
          const FinSet& ss = a.hom_set(x, src.tensor_of(us));
          if (ss.empty()) continue;
          std::vector<std::size_t> sizes;
          sizes.reserve(n);
          for (std::size_t i = 0; i < n; ++i)
            sizes.push_back(j.underlying.at(us[i], ys[i]).size());
          for (const Atom& s : ss)
            for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
              Key qs;
              qs.reserve(n);
              for (std::size_t i = 0; i < n; ++i)
                qs.push_back(j.underlying.at(us[i], ys[i]).elems[idx[i]]);
              const Atom r = bc_raw(s, us, qs);
              raws.push_back(r);
              decode[r] = {us, s, qs};
            });
        }
        std::vector<AtomPair> pairs;
        for (const Key& as : mor_tuples) {
          const Key us = doms_of(a, as);
          const Key vs = cods_of(a, as);
          const FinSet& ss = a.hom_set(x, src.tensor_of(us));
          if (ss.empty()) continue;
          const Atom& ta = src.tensor_map(as);
          std::vector<std::size_t> sizes;
          sizes.reserve(n);
          for (std::size_t i = 0; i < n; ++i)
            sizes.push_back(j.underlying.at(vs[i], ys[i]).size());
          for (const Atom& s : ss) {
            const Atom moved = a.compose(ta, s);
            for_each_choice(sizes, guard, [&](const std::vector<std::size_t>& idx) {
              Key high, low;
              high.reserve(n);
              low.reserve(n);
              for (std::size_t i = 0; i < n; ++i) {
                const Atom& q = j.underlying.at(vs[i], ys[i]).elems[idx[i]];
                high.push_back(q);
                low.push_back(j.underlying.left(as[i], q));
              }
              pairs.push_back({bc_raw(s, us, low), bc_raw(moved, vs, high)});
            });
          }
        }
        const QuotientResult qr = quotient(FinSet(raws), pairs);
        std::map<Atom, Atom> image;  // class -> element of J(x, ⊗ y̲)
        for (const Atom& r : raws) {
          const auto& [us, s, qs] = decode.at(r);
          const Atom val = j.underlying.left(s, j.structure_of(qs));
          auto [it, fresh] = image.try_emplace(qr.projection(r), val);
          if (!fresh && it->second != val)
            return CheckResult::failure("the canonical map is not constant on a coend class at " +
                                        x + " and tuple " + show(ys));
        }
        std::map<Atom, Atom> hit;  // element -> class
        for (const auto& [cls, val] : image)
          if (!hit.emplace(val, cls).second)
            return CheckResult::failure("the canonical map is not injective at " + x +
                                        " and tuple " + show(ys));
        for (const Atom& w : j.underlying.at(x, whole))
          if (!hit.count(w))
            return CheckResult::failure("the canonical map misses " + w + " at " + x +
                                        " and tuple " + show(ys));
      }
    }
  }
  return CheckResult::exact(
      "the canonical coend comparison is bijective at every object and target tuple up to arity " +
      std::to_string(bound));
}

// ---------------------------------------------------------------------------
// Doctrinal adjunction and Kan lifting
// ---------------------------------------------------------------------------

DoctrinalResult doctrinal_right_adjoint(const LaxMonoidalFunctor& f, const FinFunctor& g,
                                        const NatTransformation& unit,
                                        const NatTransformation& counit,
                                        const MonoidalStructure& src,
                                        const MonoidalStructure& tgt) {
  using Flavor = LaxMonoidalFunctor::Flavor;
  if (f.flavor != Flavor::pseudo) incompatible("doctrinal_right_adjoint: f must be pseudo");
  if (f.underlying.source != src.base || f.underlying.target != tgt.base)
    incompatible("doctrinal_right_adjoint: f does not match the structures");
  if (g.source != tgt.base || g.target != src.base)
    incompatible("doctrinal_right_adjoint: g does not match the structures");
  const FinCategory& a = src.base;
  const FinCategory& b = tgt.base;
  if (unit.source != identity_functor(a) || unit.target != compose_functors(g, f.underlying))
    incompatible("doctrinal_right_adjoint: unit is not of shape id => g after f");
  if (counit.source != compose_functors(f.underlying, g) || counit.target != identity_functor(b))
    incompatible("doctrinal_right_adjoint: counit is not of shape f after g => id");
  {
    const auto bad_unit = validate_nat_transformation(unit);
    if (!bad_unit.empty()) incompatible("doctrinal_right_adjoint: unit: " + bad_unit.front());
    const auto bad_counit = validate_nat_transformation(counit);
    if (!bad_counit.empty())
      incompatible("doctrinal_right_adjoint: counit: " + bad_counit.front());
  }
  for (const Atom& x : a.objects)
    if (b.compose(counit.components.at(f.underlying.ob(x)),
                  f.underlying.mor(unit.components.at(x))) != b.id(f.underlying.ob(x)))
      incompatible("doctrinal_right_adjoint: triangle identity fails at " + x);
  for (const Atom& y : b.objects)
    if (a.compose(g.mor(counit.components.at(y)), unit.components.at(g.ob(y))) != a.id(g.ob(y)))
      incompatible("doctrinal_right_adjoint: triangle identity fails at " + y);

  const std::size_t bound = std::min(src.arity_bound, tgt.arity_bound);
  EnumGuard guard("doctrinal mate");
  LaxMonoidalFunctor right;
  right.underlying = g;
  right.flavor = Flavor::lax;
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& ys : object_tuples(b, n, guard)) {
      Key gys, eps;
      gys.reserve(n);
      eps.reserve(n);
      for (const Atom& y : ys) {
        gys.push_back(g.ob(y));
        eps.push_back(counit.components.at(y));
      }
      const auto inv = two_sided_inverse(b, f.compositors.at(gys));
      if (!inv)
        incompatible("doctrinal_right_adjoint: compositor at " + show(gys) + " has no inverse");
      const Atom mate = b.compose(tgt.tensor_map(eps), *inv);  // f(⊗ g y̲) → ⊗ y̲
      right.compositors[ys] =
          a.compose(g.mor(mate), unit.components.at(src.tensor_of(gys)));
    }

  DoctrinalResult out;
  out.right = right;
  for (const std::string& e : validate_lax_functor(right, tgt, src))
    out.report.push_back("mate: " + e);
  const LaxMonoidalFunctor round_src = compose_lax(right, f);
  for (const std::string& e :
       validate_monoidal_transformation(unit, identity_lax(src), round_src, src, src))
    out.report.push_back("unit: " + e);
  const LaxMonoidalFunctor round_tgt = compose_lax(f, right);
  for (const std::string& e :
       validate_monoidal_transformation(counit, round_tgt, identity_lax(tgt), tgt, tgt))
    out.report.push_back("counit: " + e);
  return out;
}

KanLiftResult lift_lax_structure_on_kan(const LaxMonoidalFunctor& d, const MonoidalProfunctor& j,
                                        const KanWitness& w, const MonoidalStructure& src,
                                        const MonoidalStructure& mid, const MonoidalStructure& tgt,
                                        const Context& ctx) {
  using Flavor = LaxMonoidalFunctor::Flavor;
  if (d.flavor == Flavor::colax)
    incompatible("lift_lax_structure_on_kan: d must be lax or pseudo");
  const FinCategory& a = src.base;
  const FinCategory& bcat = mid.base;
  const FinCategory& mcat = tgt.base;
  if (d.underlying.source != a || d.underlying.target != mcat)
    incompatible("lift_lax_structure_on_kan: d does not match the structures");
  if (j.underlying.source != a || j.underlying.target != bcat)
    incompatible("lift_lax_structure_on_kan: j does not match the structures");
  if (w.extension.source != bcat || w.extension.target != mcat)
    incompatible("lift_lax_structure_on_kan: extension does not match the structures");
  const CellFrame& fr = w.cell.frame;
  if (fr.src_path.size() != 1 || fr.src_path[0] != j.underlying || fr.left != d.underlying ||
      fr.right != w.extension ||
      !(std::holds_alternative<FinCategory>(fr.target) &&
        std::get<FinCategory>(fr.target) == mcat))
    incompatible("lift_lax_structure_on_kan: witness cell is not a unit cell over (d, l)");

  const std::size_t bound = std::min({src.arity_bound, mid.arity_bound, tgt.arity_bound});
  EnumGuard guard("kan lift");
  KanLiftResult out;
  std::map<Key, Atom> cmp;
  cmp[Key{}] =
      mcat.compose(w.cell.components.at(Key{j.structure_of({})}), d.compositors.at(Key{}));

  const std::vector<Atom> elems = j.underlying.all_elems();
  for (std::size_t n = 1; n <= bound; ++n) {
    const FinFunctor dn = power_functor(d.underlying, n);
    const FinFunctor ln = power_functor(w.extension, n);
    const FinFunctor tm = tensor_functor(tgt, n);
    const Profunctor jn = profunctor_power(j.underlying, n);

    Cell chi;
    chi.frame.src_path = {jn};
    chi.frame.left = compose_functors(tm, dn);
    chi.frame.right = compose_functors(tm, ln);
    chi.frame.target = mcat;
    Cell beta;
    beta.frame.src_path = {jn};
    beta.frame.left = chi.frame.left;
    beta.frame.right = compose_functors(w.extension, tensor_functor(mid, n));
    beta.frame.target = mcat;
    for (const Key& es : tuples_over(elems, n, guard)) {
      Key etas, xs;
      etas.reserve(n);
      xs.reserve(n);
      for (const Atom& e : es) {
        etas.push_back(w.cell.components.at(Key{e}));
        xs.push_back(j.underlying.position(e).first);
      }
      const Key key{tup(es)};
      chi.components[key] = tgt.tensor_map(etas);
      beta.components[key] =
          mcat.compose(w.cell.components.at(Key{j.structure_of(es)}), d.compositors.at(xs));
    }

    Context widened = ctx;
    widened.verticals.push_back(beta.frame.right);
    const CheckResult pres = defines_left_kan(chi, widened, w.mode);
    if (!pres.ok()) {
      out.preservation =
          CheckResult{pres.verdict, "arity " + std::to_string(n) + ": " + pres.detail,
                      pres.witness};
      return out;
    }
    const std::vector<Cell> factors = factor_extension(beta, chi);
    if (factors.size() != 1)
      throw std::logic_error("monoidal: kan lift: preservation holds but the structure cell has " +
                             std::to_string(factors.size()) + " factorizations");
    for (const Key& ys : object_tuples(bcat, n, guard))
      cmp[ys] = factors[0].components.at(Key{tup(ys)});
  }

  LaxMonoidalFunctor lifted;
  lifted.underlying = w.extension;
  lifted.flavor = Flavor::lax;
  lifted.compositors = std::move(cmp);
  for (const std::string& e : validate_lax_functor(lifted, mid, tgt))
    out.report.push_back("lifted structure: " + e);
  for (std::size_t n = 0; n <= bound; ++n)
    for (const Key& es : tuples_over(elems, n, guard)) {
      Key etas, xs, ys;
      for (const Atom& e : es) {
        etas.push_back(w.cell.components.at(Key{e}));
        const AtomPair& p = j.underlying.position(e);
        xs.push_back(p.first);
        ys.push_back(p.second);
      }
      const Atom lhs = mcat.compose(lifted.compositors.at(ys), tgt.tensor_map(etas));
      const Atom rhs =
          mcat.compose(w.cell.components.at(Key{j.structure_of(es)}), d.compositors.at(xs));
      if (lhs != rhs)
        out.report.push_back("structure cell equation fails at elements " + show(es));
    }
  out.lifted = std::move(lifted);
  out.preservation = CheckResult::bounded(
      "the tensored unit defines a left Kan extension at every arity up to " +
      std::to_string(bound));
  return out;
}

// ---------------------------------------------------------------------------
// Product scaffolding
// ---------------------------------------------------------------------------

FinCategory product_category(const std::vector<FinCategory>& factors) {
  EnumGuard guard("product category");
  const std::size_t n = factors.size();
  std::vector<std::vector<Atom>> obj_pools, mor_pools;
  std::vector<std::vector<AtomPair>> comp_pools;
  for (const FinCategory& f : factors) {
    obj_pools.push_back(f.objects.elems);
    mor_pools.push_back(f.morphisms());
    std::vector<AtomPair> cp;
    cp.reserve(f.comp.size());
    for (const auto& [gf, h] : f.comp) cp.push_back(gf);
    comp_pools.push_back(std::move(cp));
  }
  auto sizes_of = [&](const auto& pools) {
    std::vector<std::size_t> sizes;
    sizes.reserve(n);
    for (const auto& p : pools) sizes.push_back(p.size());
    return sizes;
  };

  std::vector<Atom> objects;
  std::map<Atom, Atom> identity;
  for_each_choice(sizes_of(obj_pools), guard, [&](const std::vector<std::size_t>& idx) {
    Key xs, ids;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(obj_pools[i][idx[i]]);
      ids.push_back(factors[i].id(xs.back()));
    }
    objects.push_back(tup(xs));
    identity[tup(xs)] = tup(ids);
  });

  std::map<AtomPair, std::vector<Atom>> hom_atoms;
  for_each_choice(sizes_of(mor_pools), guard, [&](const std::vector<std::size_t>& idx) {
    Key ms, ds, cs;
    for (std::size_t i = 0; i < n; ++i) {
      const Atom& m = mor_pools[i][idx[i]];
      ms.push_back(m);
      ds.push_back(factors[i].dom(m));
      cs.push_back(factors[i].cod(m));
    }
    hom_atoms[{tup(ds), tup(cs)}].push_back(tup(ms));
  });
  std::map<AtomPair, FinSet> hom;
  for (auto& [xy, ms] : hom_atoms) hom[xy] = FinSet(std::move(ms));

  std::map<AtomPair, Atom> comp;
  for_each_choice(sizes_of(comp_pools), guard, [&](const std::vector<std::size_t>& idx) {
    Key gs, fs, hs;
    for (std::size_t i = 0; i < n; ++i) {
      const AtomPair& gf = comp_pools[i][idx[i]];
      gs.push_back(gf.first);
      fs.push_back(gf.second);
      hs.push_back(factors[i].compose(gf.first, gf.second));
    }
    comp[{tup(gs), tup(fs)}] = tup(hs);
  });
  return FinCategory::build(FinSet(std::move(objects)), std::move(hom), std::move(identity),
                            std::move(comp));
}

FinCategory power_category(const FinCategory& a, std::size_t n) {
  return product_category(std::vector<FinCategory>(n, a));
}

FinFunctor power_functor(const FinFunctor& f, std::size_t n) {
  EnumGuard guard("power functor");
  FinFunctor out;
  out.source = power_category(f.source, n);
  out.target = power_category(f.target, n);
  for (const Key& xs : object_tuples(f.source, n, guard)) {
    Key fxs;
    fxs.reserve(n);
    for (const Atom& x : xs) fxs.push_back(f.ob(x));
    out.obj_map[tup(xs)] = tup(fxs);
  }
  for (const Key& ms : morphism_tuples(f.source, n, guard)) {
    Key fms;
    fms.reserve(n);
    for (const Atom& m : ms) fms.push_back(f.mor(m));
    out.mor_map[tup(ms)] = tup(fms);
  }
  return out;
}

FinFunctor tensor_functor(const MonoidalStructure& m, std::size_t n) {
  if (n > m.arity_bound) incompatible("tensor_functor: arity exceeds the structure's bound");
  EnumGuard guard("tensor functor");
  FinFunctor out;
  out.source = power_category(m.base, n);
  out.target = m.base;
  for (const Key& xs : object_tuples(m.base, n, guard)) out.obj_map[tup(xs)] = m.tensor_of(xs);
  for (const Key& ms : morphism_tuples(m.base, n, guard)) out.mor_map[tup(ms)] = m.tensor_map(ms);
  return out;
}

Profunctor profunctor_power(const Profunctor& j, std::size_t n) {
  EnumGuard guard("profunctor power");
  const FinCategory source = power_category(j.source, n);
  const FinCategory target = power_category(j.target, n);
  const auto into_src = morphisms_by_cod(j.source);
  const auto from_tgt = morphisms_by_dom(j.target);

  std::map<AtomPair, std::vector<Atom>> fibers;
  std::map<AtomPair, Atom> lact, ract;
  const std::vector<Atom> elems = j.all_elems();
  for (const Key& es : tuples_over(elems, n, guard)) {
    Key xs, ys;
    for (const Atom& e : es) {
      const AtomPair& p = j.position(e);
      xs.push_back(p.first);
      ys.push_back(p.second);
    }
    const Atom te = tup(es);
    fibers[{tup(xs), tup(ys)}].push_back(te);

    std::vector<std::size_t> in_sizes, out_sizes;
    for (std::size_t i = 0; i < n; ++i) {
      in_sizes.push_back(into_src.at(xs[i]).size());
      out_sizes.push_back(from_tgt.at(ys[i]).size());
    }
    for_each_choice(in_sizes, guard, [&](const std::vector<std::size_t>& idx) {
      Key as, acted;
      for (std::size_t i = 0; i < n; ++i) {
        const Atom& m = into_src.at(xs[i])[idx[i]];
        as.push_back(m);
        acted.push_back(j.left(m, es[i]));
      }
      lact[{tup(as), te}] = tup(acted);
    });
    for_each_choice(out_sizes, guard, [&](const std::vector<std::size_t>& idx) {
      Key bs, acted;
      for (std::size_t i = 0; i < n; ++i) {
        const Atom& m = from_tgt.at(ys[i])[idx[i]];
        bs.push_back(m);
        acted.push_back(j.right(es[i], m));
      }
      ract[{te, tup(bs)}] = tup(acted);
    });
  }
  std::map<AtomPair, FinSet> elems_out;
  for (auto& [xy, es] : fibers) elems_out[xy] = FinSet(std::move(es));
  return Profunctor::build(source, target, std::move(elems_out), std::move(lact),
                           std::move(ract));
}

}  // namespace hvdc
