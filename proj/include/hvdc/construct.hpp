#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hvdc/profcells.hpp"

namespace hvdc {

/// A profunctor obtained by restriction along two functors, together with the
/// cell exhibiting it. The cell is cartesian by construction.
struct RestrictionResult {
  Profunctor profunctor;  // K(f, g)
  Cell cartesian_cell;    // (K(f,g)) ⇒ K over (f, g); nullary form lands in C
};

/// K(f, g) for K: C ⇸ D, f: A → C, g: B → D. Fibers are copies of K(fx, gy)
/// with elements renamed "res(x,y,u)"; the actions are inherited through f
/// and g. The cell projects each copy back to its original element.
RestrictionResult restrict(const Profunctor& k, const FinFunctor& f, const FinFunctor& g);

/// C(f, g) for f: A → C, g: B → C: the hom-sets of C restricted along both
/// functors, with a nullary-target cell into C. Companions and conjoints are
/// the two one-sided special cases.
RestrictionResult nullary_restrict(const FinCategory& c, const FinFunctor& f, const FinFunctor& g);

/// A companion or conjoint: the restriction with its cartesian cell plus the
/// nullary-source cocartesian cell, satisfying both identities
/// (vertical composite = id_f, horizontal composite = identity cell).
struct CompanionResult {
  RestrictionResult restriction;
  Cell cocartesian_cell;
};

/// f_* = C(f, id): A ⇸ C with cocartesian cell () ⇒ f_* over (id, f).
CompanionResult companion(const FinFunctor& f);
/// f^* = C(id, f): C ⇸ A with cocartesian cell () ⇒ f^* over (f, id).
CompanionResult conjoint(const FinFunctor& f);

/// The horizontal unit I_A (the hom-profunctor) with the cocartesian cell
/// () ⇒ I_A (x ↦ id_x) and the cartesian cell (I_A) ⇒ A (u ↦ u).
struct UnitResult {
  Profunctor profunctor;
  Cell cocartesian_cell;
  Cell cartesian_cell;
};
UnitResult unit_profunctor(const FinCategory& a);

/// J1 ⊙ … ⊙ Jn computed fiberwise as the coend: composable element tuples
/// modulo moving middle-category morphisms across the seams. Class atoms are
/// named "cls(u1,...,un)" after the least raw tuple they contain.
struct CompositeResult {
  Profunctor profunctor;
  Cell cocartesian_cell;        // (J1..Jn) ⇒ composite over identities
  std::map<Key, Atom> class_map;  // raw composable tuple -> class atom
};
CompositeResult horizontal_composite(const std::vector<Profunctor>& path);

/// The tabulation of J: A ⇸ B: objects are triples (x, u, y) with u ∈ J(x,y),
/// morphisms are pairs (s, t) making the two actions agree, and the nullary
/// cell () ⇒ J over the projections picks out u.
struct TabulationResult {
  FinCategory category;
  FinFunctor proj_source;  // (x,u,y) ↦ x
  FinFunctor proj_target;  // (x,u,y) ↦ y
  Cell projection;         // nullary-source cell, (x,u,y) ↦ u
  std::map<Atom, Atom> object_elem;  // tabulation object ↦ its element u
};
TabulationResult tabulation(const Profunctor& j);

/// The cograph of J: objects of A and B side by side, morphisms of A, of B,
/// and one morphism gl(x) → gr(y) per element of J(x, y); composition runs
/// through the actions. The cell (J) ⇒ cograph sends u to its morphism and
/// is cartesian.
struct CotabulationResult {
  FinCategory category;
  FinFunctor insert_source;
  FinFunctor insert_target;
  Cell cell;
};
CotabulationResult cotabulation(const Profunctor& j);

/// True iff every hom-action A(x, y) → C(fx, fy) of f is a bijection.
bool is_full_and_faithful(const FinFunctor& f);

/// A pair of mutually inverse cells over identity verticals.
struct IsoWitness {
  Cell forward;   // (a) ⇒ b
  Cell backward;  // (b) ⇒ a
};

/// Searches for an isomorphism a ≅ b witnessed by cells; the forward cell is
/// the first fiberwise-bijective cell in enumeration order.
std::optional<IsoWitness> find_profunctor_iso(const Profunctor& a, const Profunctor& b);

}  // namespace hvdc
