#pragma once

#include <optional>

#include "hvdc/universal.hpp"

namespace hvdc {

/// A weight on A is a profunctor A ⇸ 1 into the terminal category; each
/// fiber J(x, *) is the weighting set of x.
struct Weight {
  Profunctor profunctor;
};

/// Throws std::invalid_argument unless the weight's target is a one-object,
/// one-morphism category.
void validate_weight(const Weight& w);

struct ColimitResult {
  Atom apex;
  Cell cocone;  // (J) ⇒ M over (d, point at apex), nullary target
};

/// Left Kan extension data: the extension functor and the exhibiting cell
/// η: (J) ⇒ M over (d, extension), together with the strength of the claim.
struct KanWitness {
  FinFunctor extension;
  Cell cell;
  KanMode mode = KanMode::pointwise;
};

/// Exact universality check for a weighted-colimit cocone. The test cells
/// append one auxiliary free leg H: 1 ⇸ 1 whose size ranges up to the largest
/// hom-set of the codomain; this bound is complete because a factorization
/// against (J, H) is determined element-by-element in H, so any violation is
/// already visible for |H| ≤ 1. Apex functors range over all points of the
/// codomain, which is the full quantification. Success is therefore
/// holds_exact.
CheckResult is_weighted_colimit(const Weight& w, const FinFunctor& d, const Cell& cocone);

/// Exhaustive search for a weighted colimit of d: A → M by w. Apexes are
/// tried in canonical object order and cocones in enumeration order; the
/// first universal cocone is returned (unique up to isomorphism).
std::optional<ColimitResult> weighted_colimit(const Weight& w, const FinFunctor& d);

/// Pointwise left Kan extension of d: A → M along J: A ⇸ B, computed as the
/// J(id, y)-weighted colimit of d at every object y of B. Returns a witness
/// whose cell collects the per-object cocones and whose extension acts on
/// morphisms by the unique comparison between neighbouring colimits; none if
/// some required colimit does not exist.
std::optional<KanWitness> pointwise_lan(const FinFunctor& d, const Profunctor& j);

/// Verifies a Kan witness: exactly, that every restriction of the cell along
/// a point of B exhibits a weighted colimit (this characterizes the pointwise
/// property, so success is holds_exact), and as a cross-check, the bounded
/// context factorization via defines_left_kan.
CheckResult check_pointwise_lan(const KanWitness& w, const Context& ctx);

/// f is dense when the companion cartesian cell exhibits the identity of its
/// codomain as the pointwise left Kan extension of f along f_*.
CheckResult is_dense(const FinFunctor& f, const Context& ctx);

/// Left Beck-Chevalley condition for a unary-target cell φ over (f0, fn):
/// φ factored through the restriction of its target along fn must be
/// pointwise cocartesian on the right.
CheckResult satisfies_left_beck_chevalley(const Cell& phi, const Context& ctx);

/// φ is left exact relative to d when composing the pointwise extension cell
/// of d along φ's target with φ again defines a left Kan extension. Vacuously
/// bounded when d has no pointwise extension along the target.
CheckResult is_left_exact(const Cell& phi, const FinFunctor& d, const Context& ctx);

}  // namespace hvdc
