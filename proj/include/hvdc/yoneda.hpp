#pragma once

#include <map>
#include <string>
#include <vector>

#include "hvdc/kan.hpp"

namespace hvdc {

/// Contravariant finite-set presheaf on A: a value set per object and an
/// action (a: x'→x, u ∈ p x) ↦ p(a)(u) ∈ p x'. Value atoms may repeat across
/// objects; an action key is unambiguous because the morphism pins the object.
struct Presheaf {
  FinCategory base;
  std::map<Atom, FinSet> values;
  std::map<AtomPair, Atom> action;

  const FinSet& at(const Atom& x) const;
  const Atom& act(const Atom& a, const Atom& u) const;

  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

/// Empty report iff the value table is total over the base objects and the
/// action is total, typed, and functorial (identities and composition).
std::vector<std::string> validate_presheaf(const Presheaf& p);

/// A natural family p ⇒ q: per object, a function table p(x) → q(x).
using PresheafNat = std::map<Atom, std::map<Atom, Atom>>;

/// Empty report iff t is a total natural transformation p ⇒ q.
std::vector<std::string> check_natural(const Presheaf& p, const Presheaf& q,
                                       const PresheafNat& t);

/// Identity family on p, with an entry per base object (so == is usable).
PresheafNat identity_presheaf_nat(const Presheaf& p);

/// Componentwise composite second ∘ first of natural families.
PresheafNat compose_presheaf_nat(const PresheafNat& second, const PresheafNat& first);

/// The representable presheaf A(−, x); the action is pre-composition.
Presheaf yoneda_object(const FinCategory& a, const Atom& x);

/// The complete hom-set between two presheaves on a common base, found by
/// encoding both as functors from the opposite base into a small category of
/// the participating value sets and enumerating natural transformations.
struct PresheafHomSet {
  Presheaf source;
  Presheaf target;
  std::vector<PresheafNat> transformations;
};
PresheafHomSet hom_presheaves(const Presheaf& p, const Presheaf& q);

/// The canonical family u ↦ (a ↦ p(a)(u)) from p(x) to the transformations
/// A(−, x) ⇒ p, verified to be a bijection and natural in x. The report is
/// empty exactly when the lemma's statement holds on this instance.
struct YonedaCheck {
  std::map<Atom, PresheafNat> bijection;
  std::vector<std::string> report;
};
YonedaCheck yoneda_lemma_check(const FinCategory& a, const Presheaf& p, const Atom& x);

/// The transpose of J: A ⇸ B: a presheaf J(−, y) per object y of B, a natural
/// family per morphism (acting by the right action), and per (x, y) the
/// bijection J(x, y) ≅ hom(A(−, x), J(−, y)) sending u to a ↦ λ(a, u).
/// `exact` records that functoriality and every bijection were verified.
struct CurryResult {
  std::map<Atom, Presheaf> obj_map;
  std::map<Atom, PresheafNat> mor_map;
  std::map<AtomPair, std::map<Atom, PresheafNat>> bijections;  // (x, y) -> u -> family
  bool exact = false;
};
CurryResult curry(const Profunctor& j);

/// Precomposition with f: values (x) = p(f x), action through f's morphisms.
Presheaf presheaf_restriction(const FinFunctor& f, const Presheaf& p);

/// The presheaf underlying a weight (a profunctor into the terminal
/// category): values are the fibers, the action is the left action.
Presheaf weight_presheaf(const Profunctor& j);

/// A functor from a finite shape into presheaves on a common base, given by
/// tables: one presheaf per shape object, one natural family per morphism.
struct PresheafDiagram {
  FinCategory shape;
  FinCategory base;
  std::map<Atom, Presheaf> objects;
  std::map<Atom, PresheafNat> morphisms;
};
std::vector<std::string> validate_presheaf_diagram(const PresheafDiagram& d);

/// Weighted colimit of a presheaf diagram: at every base object m the coend
/// Σ_a J(a) × d(a)(m) modulo moving shape morphisms across the pairing,
/// computed by quotient. Class atoms are named after their least member
/// "cel(m,a,u,v)". Insertions index the coend classes by (a, u ∈ J(a)).
struct PresheafColimit {
  Presheaf presheaf;
  std::map<AtomPair, PresheafNat> insertions;
};
PresheafColimit presheaf_weighted_colimit(const Weight& w, const PresheafDiagram& d);

/// Verifies the weighted-colimit property of `colim` against the supplied
/// family of test presheaves: for each member, composing with the insertions
/// is a bijection from transformations out of the colimit to weighted
/// cocones. Failure entries name the family member by index.
std::vector<std::string> check_presheaf_colimit(const Weight& w, const PresheafDiagram& d,
                                                const PresheafColimit& colim,
                                                const std::vector<Presheaf>& family);

/// Family-relative verification of the two adjoints to restriction along
/// f: A → C (left transport ⊣ restriction ⊣ right transport). Both
/// transports, their units and counits are built internally; the triangle
/// identities are checked on every supplied presheaf, and each unit/counit
/// is checked natural. Failure entries name the presheaf by family index.
std::vector<std::string> check_restriction_adjoints(const FinFunctor& f,
                                                    const std::vector<Presheaf>& on_source,
                                                    const std::vector<Presheaf>& on_target);

}  // namespace hvdc
