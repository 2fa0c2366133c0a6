#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hvdc/util.hpp"

namespace hvdc {

using Atom = std::string;
using AtomPair = std::pair<Atom, Atom>;

/// Finite set of named elements kept in canonical (lexicographic) order, so
/// extensional equality of sets is equality of the underlying vectors.
struct FinSet {
  std::vector<Atom> elems;

  FinSet() = default;
  explicit FinSet(std::vector<Atom> xs);
  FinSet(std::initializer_list<Atom> xs);

  bool contains(const Atom& a) const;
  std::size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
  auto begin() const { return elems.begin(); }
  auto end() const { return elems.end(); }

  /// Set union (canonical order preserved).
  FinSet merged(const FinSet& other) const;

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet&, const FinSet&) = default;
};

/// Total function between finite sets, given by a complete table.
struct FinFunction {
  FinSet source;
  FinSet target;
  std::map<Atom, Atom> table;

  const Atom& operator()(const Atom& a) const;

  friend bool operator==(const FinFunction&, const FinFunction&) = default;
};

std::vector<std::string> validate_function(const FinFunction& f);

/// Finite category given by complete tables: hom-sets, identities, and a
/// composition table keyed (g, f) -> g∘f. Morphism atoms must be pairwise
/// distinct across hom-sets so that a morphism determines its endpoints.
struct FinCategory {
  FinSet objects;
  std::map<AtomPair, FinSet> hom;  // (x, y) -> hom(x, y); empty entries omitted
  std::map<Atom, Atom> identity;   // x -> id_x
  std::map<AtomPair, Atom> comp;   // (g, f) -> g∘f  (g after f)

  // Derived morphism -> (dom, cod) index; rebuilt by normalize() and ignored
  // by equality. All construction sites call normalize() before sharing.
  std::map<Atom, AtomPair> ends;

  /// Drops empty hom entries and rebuilds the endpoint index.
  void normalize();

  static FinCategory build(FinSet objects, std::map<AtomPair, FinSet> hom,
                           std::map<Atom, Atom> identity, std::map<AtomPair, Atom> comp);

  const FinSet& hom_set(const Atom& x, const Atom& y) const;
  bool has_object(const Atom& x) const { return objects.contains(x); }
  bool has_morphism(const Atom& m) const { return ends.count(m) != 0; }
  const Atom& dom(const Atom& m) const;
  const Atom& cod(const Atom& m) const;
  const Atom& id(const Atom& x) const;
  /// g∘f — g after f; throws if the pair is missing from the table.
  const Atom& compose(const Atom& g, const Atom& f) const;
  /// All morphisms in canonical order (by hom key, then atom order).
  std::vector<Atom> morphisms() const;

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects == b.objects && a.hom == b.hom && a.identity == b.identity &&
           a.comp == b.comp;
  }
};

/// Functor between finite categories, as total object/morphism tables.
struct FinFunctor {
  FinCategory source;
  FinCategory target;
  std::map<Atom, Atom> obj_map;
  std::map<Atom, Atom> mor_map;

  const Atom& ob(const Atom& x) const;
  const Atom& mor(const Atom& m) const;

  friend bool operator==(const FinFunctor&, const FinFunctor&) = default;
};

FinFunctor identity_functor(const FinCategory& c);
/// g∘f — g after f.
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);
std::vector<std::string> validate_functor(const FinFunctor& f);

/// Natural transformation between parallel functors.
struct NatTransformation {
  FinFunctor source;
  FinFunctor target;
  std::map<Atom, Atom> components;  // object of source.source -> morphism of target cat

  friend bool operator==(const NatTransformation&, const NatTransformation&) = default;
};

std::vector<std::string> validate_nat_transformation(const NatTransformation& t);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Empty report iff all category axioms hold; each violation names the
/// offending object, morphism, or composable pair/triple.
std::vector<std::string> validate_category(const FinCategory& c);

/// Reverses all arrows; involutive. Morphism atoms are reused unchanged.
FinCategory opposite(const FinCategory& c);

struct QuotientResult {
  FinSet classes;          // canonical representatives (least atom per class)
  FinFunction projection;  // original set -> classes
};

/// Quotient of X by the equivalence generated by `pairs` (union-find).
/// The representative of each class is its lexicographically least atom.
QuotientResult quotient(const FinSet& x, const std::vector<AtomPair>& pairs);

/// All functions X -> Y in deterministic (lexicographic) order.
std::vector<FinFunction> enumerate_functions(const FinSet& x, const FinSet& y);

/// All natural transformations F => G for parallel functors, deterministic.
std::vector<NatTransformation> enumerate_nat_transformations(const FinFunctor& f,
                                                             const FinFunctor& g);

/// All functors A -> B in deterministic order. Fuel for brute-force oracles;
/// guarded by the enumeration budget.
std::vector<FinFunctor> enumerate_functors(const FinCategory& a, const FinCategory& b);

}  // namespace hvdc
