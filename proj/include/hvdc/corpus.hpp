#pragma once

#include <string>
#include <vector>

#include "hvdc/fincore.hpp"

namespace hvdc::corpus {

/// One object "*", one morphism.
FinCategory terminal_category();

/// Discrete category on the given object names.
FinCategory discrete_category(const std::vector<Atom>& names);

/// Category of a preorder: builds the reflexive-transitive closure of `leq`
/// over `names`, with at most one morphism "le:x:y" between any two objects.
FinCategory poset_category(const std::vector<Atom>& names,
                           const std::vector<AtomPair>& leq);

/// One-object category of a finite monoid. `mult[i][j]` is the index of
/// elems[i]∘elems[j]; `unit` indexes the neutral element.
FinCategory monoid_category(const std::vector<Atom>& elems,
                            const std::vector<std::vector<int>>& mult, int unit);

FinCategory walking_arrow();       // 0 → 1
FinCategory walking_iso();         // x ≅ y
FinCategory parallel_pair();       // 0 ⇉ 1
FinCategory span_category();       // a ← s → b
FinCategory commuting_square();    // poset 2×2
FinCategory chain_poset(int n);    // 0 < 1 < … < n-1
FinCategory cyclic_group_category(int n);  // one object, Z/n
FinCategory walking_idempotent();  // one object, e∘e = e

struct NamedCategory {
  std::string name;
  FinCategory cat;
};

/// The bundled test corpus: small categories (≤4 objects, ≤12 morphisms).
std::vector<NamedCategory> standard_categories();

}  // namespace hvdc::corpus
