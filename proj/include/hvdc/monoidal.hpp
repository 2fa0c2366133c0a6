#pragma once

#include <functional>
#include <optional>

#include "hvdc/kan.hpp"
#include "hvdc/yoneda.hpp"

namespace hvdc {

/// A composite shape: the outer tensor has arity shape.size() and slot i
/// holds an inner tensor of arity shape[i]. The flattened leaf count is the
/// sum of the entries (entries may be 0).
using Shape = std::vector<std::size_t>;

/// Unbiased monoidal structure on a finite category, truncated at a fixed
/// arity bound N: one tensor table per arity n ≤ N (n = 0 picks the unit
/// object), a unitor component x → ⊗₁(x) per object, and an associator
/// component ⊗ₙ(⊗_{m₁}(..), …) → ⊗_{Σm}(..) per shape of total arity ≤ N and
/// per flattened leaf tuple. Strict structures have identity unitors and
/// associators; nothing here assumes invertibility.
struct MonoidalStructure {
  FinCategory base;
  std::size_t arity_bound = 3;
  std::vector<std::map<Key, Atom>> tensor_obj;  // index n: object n-tuple -> object
  std::vector<std::map<Key, Atom>> tensor_mor;  // index n: morphism n-tuple -> morphism
  std::map<Atom, Atom> unitor;                  // x -> (x → ⊗₁ x)
  std::map<std::pair<Shape, Key>, Atom> associator;  // (shape, leaves) -> component

  const Atom& unit_object() const;
  /// ⊗ₙ of an object tuple (n = objects.size() ≤ arity_bound).
  const Atom& tensor_of(const Key& objects) const;
  /// ⊗ₙ of a morphism tuple.
  const Atom& tensor_map(const Key& morphisms) const;
  const Atom& unitor_at(const Atom& x) const;
  const Atom& assoc(const Shape& shape, const Key& leaves) const;
};

/// Strict structure from a unit object and a strictly associative, strictly
/// unital binary operation (given separately on objects and morphisms):
/// tensors are iterated folds, unitors and associators are identities.
MonoidalStructure strict_monoidal(const FinCategory& base, const Atom& unit,
                                  const std::function<Atom(const Atom&, const Atom&)>& obj_op,
                                  const std::function<Atom(const Atom&, const Atom&)>& mor_op,
                                  std::size_t arity_bound = 3);

/// All shapes with the given number of leaves available at bound N: size ≤ N
/// and sum ≤ N, in deterministic order. Used by the validators and tests.
std::vector<Shape> shapes_within(std::size_t bound);

/// Empty report iff the tensor tables are total functors, unitor and
/// associator components are typed and natural, and the unbiased coherence
/// axioms hold at every (doubly nested) shape of total arity ≤ arity_bound.
/// Violations name the shape and the object tuple.
std::vector<std::string> validate_monoidal(const MonoidalStructure& m);

/// Functor with monoidal structure: one compositor component per object
/// tuple of size ≤ N. For lax (and pseudo) the component is
/// ⊗(f x₁, …, f xₙ) → f(⊗ x̲); colax reverses the direction. Pseudo demands
/// two-sided invertibility of every component.
struct LaxMonoidalFunctor {
  enum class Flavor { lax, colax, pseudo };
  FinFunctor underlying;
  Flavor flavor = Flavor::lax;
  std::map<Key, Atom> compositors;
};

/// Identity functor with identity compositors (strict, hence pseudo).
LaxMonoidalFunctor identity_lax(const MonoidalStructure& m);

/// Composite structure: (g ∘ f)_⊘ = g(f_⊘) ∘ g_⊘ at image tuples, for
/// matching flavors (pseudo composes with either and downgrades to it).
LaxMonoidalFunctor compose_lax(const LaxMonoidalFunctor& g, const LaxMonoidalFunctor& f);

/// Empty report iff the compositors are total, typed, natural in the tuple,
/// compatible with the associators and unitors at every shape of total arity
/// ≤ min(src, tgt bounds), and invertible when the flavor is pseudo.
std::vector<std::string> validate_lax_functor(const LaxMonoidalFunctor& f,
                                              const MonoidalStructure& src,
                                              const MonoidalStructure& tgt);

/// Profunctor with monoidal structure: one element J_⊘(u̲) ∈ J(⊗x̲, ⊗y̲) per
/// element tuple u̲ (uᵢ ∈ J(xᵢ, yᵢ)) of size ≤ N; the empty tuple picks the
/// unit element in J(e, e).
struct MonoidalProfunctor {
  Profunctor underlying;
  std::map<Key, Atom> structure;

  const Atom& structure_of(const Key& elems) const;
};

/// The hom profunctor of m.base with J_⊘ given by the tensor tables.
MonoidalProfunctor hom_monoidal(const MonoidalStructure& m);

/// The companion f_* of a pseudo (or colax) monoidal functor, with
/// J_⊘(q̲) = ⊗(q̲) ∘ f_⊘⁻¹ transported through the companion's element
/// renaming. Throws std::invalid_argument when f is lax-only (the structure
/// needs the reversed compositor).
MonoidalProfunctor companion_monoidal(const LaxMonoidalFunctor& f, const MonoidalStructure& src,
                                      const MonoidalStructure& tgt);

/// Empty report iff the structure table is total and typed, equivariant for
/// both actions, and satisfies the associativity axiom
///   ρ(J_⊘(J_⊘(u̲₁), …, J_⊘(u̲ₙ)), 𝔞_B) = λ(𝔞_A, J_⊘(u̲ flattened))
/// at every shape of total arity ≤ N together with the unit axiom
///   λ(𝔦_A, J_⊘(u)) = ρ(u, 𝔦_B).
std::vector<std::string> validate_monoidal_profunctor(const MonoidalProfunctor& j,
                                                      const MonoidalStructure& src,
                                                      const MonoidalStructure& tgt);

/// Empty report iff xi is natural and its components intertwine the
/// compositors: g_⊘ ∘ ⊗(ξ_{x₁}, …, ξ_{xₙ}) = ξ_{⊗x̲} ∘ f_⊘ for every tuple
/// of size ≤ N (mirrored for colax). Requires matching flavors.
std::vector<std::string> validate_monoidal_transformation(const NatTransformation& xi,
                                                          const LaxMonoidalFunctor& f,
                                                          const LaxMonoidalFunctor& g,
                                                          const MonoidalStructure& src,
                                                          const MonoidalStructure& tgt);

// ---------------------------------------------------------------------------
// Day convolution
// ---------------------------------------------------------------------------

/// n-ary Day convolution: value at x is the coend over object tuples u̲ of
/// base(x, ⊗u̲) × p₁u₁ × … × pₙuₙ, taken by quotienting the disjoint sum of
/// raw triples (u̲, s, v̲) by the span identifications along every morphism
/// tuple; the contravariant action pre-composes s. n = 0 yields the
/// representable of the unit object itself. Throws std::invalid_argument
/// when n exceeds the bound, n ≠ ps.size(), or a presheaf lives elsewhere.
Presheaf day_convolution(const MonoidalStructure& m, const std::vector<Presheaf>& ps,
                         std::size_t n);

/// Functoriality of the convolution: the map induced on classes by per-slot
/// natural families tᵢ: psᵢ ⇒ qsᵢ. Representative independence is re-checked
/// on every class; disagreement (possible only for non-natural input) throws
/// std::logic_error.
PresheafNat day_map(const MonoidalStructure& m, const std::vector<Presheaf>& ps,
                    const std::vector<Presheaf>& qs, const std::vector<PresheafNat>& ts,
                    std::size_t n);

/// Explicit mutually inverse natural maps between two presheaves, with the
/// verification report (naturality of both, both round trips identity).
struct DayIso {
  Presheaf source;
  Presheaf target;
  PresheafNat forward;
  PresheafNat backward;
  std::vector<std::string> report;
};

/// One outer slot of a nested convolution: an inner convolution of `group`
/// when convolved (group may be empty — the 0-ary convolution), or the
/// single presheaf itself when not (group must then have size one).
struct DaySlot {
  std::vector<Presheaf> group;
  bool convolved = true;
};

/// Canonical comparison from the outer convolution of the slots to the flat
/// convolution of all leaves. Forward composes the inner witnesses with the
/// associator (plain slots are first wrapped through the unitor); backward
/// re-nests with identity witnesses and needs the touched associator and
/// unitor components to be invertible — missing inverses are reported.
DayIso day_flatten_iso(const MonoidalStructure& m, const std::vector<DaySlot>& slots);

/// The collapse ⊛₁(p) ≅ p (forward acts by 𝔦⁻¹ ∘ s, backward inserts along
/// the unitor); needs invertible unitor components.
DayIso day_singleton_iso(const MonoidalStructure& m, const Presheaf& p);

/// The unit law y(e) ⊛ p ≅ p (unit_on_left) or p ⊛ y(e) ≅ p, as the
/// composite of a flatten and the singleton collapse.
DayIso day_unit_iso(const MonoidalStructure& m, const Presheaf& p, bool unit_on_left);

// ---------------------------------------------------------------------------
// Monoidal Yoneda
// ---------------------------------------------------------------------------

/// The pseudomonoidal structure of the Yoneda embedding: for every object
/// tuple x̲ of size ≤ N, mutually inverse natural maps between the
/// convolution of the representables and the representable of the tensor,
///   forward:  [s, a̲] ↦ ⊗(a̲) ∘ s,    backward: t ↦ [t, id̲],
/// plus the functor-style coherence of these maps with the associators and
/// unitors (against the canonical convolution-side comparisons) at every
/// shape of total arity ≤ N. All verification results land in report.
struct MonoidalYonedaStructure {
  std::map<Key, Presheaf> convolution;  // x̲ -> (y x₁ ⊛ … ⊛ y xₙ)
  std::map<Key, PresheafNat> forward;   // x̲ -> convolution ⇒ y(⊗x̲)
  std::map<Key, PresheafNat> backward;
  std::vector<std::string> report;
};
MonoidalYonedaStructure yoneda_monoidal_structure(const MonoidalStructure& m);

/// Monoidal structure on the transpose of J: for every target tuple y̲ of
/// size ≤ N the compositor (cur J y₁ ⊛ … ⊛ cur J yₙ) → cur J(⊗y̲) sending
/// [s, q̲] to λ(s, J_⊘(q̲)), its per-tuple invertibility, the functor-style
/// coherence at bounded shapes, and the intertwining of the curry bijections
/// with J_⊘ (the monoidal Yoneda lemma on this instance). Every failed
/// verification is a report entry.
struct MonoidalCurryResult {
  CurryResult curried;
  std::map<Key, Presheaf> convolution;    // y̲ -> (cur J y₁ ⊛ … ⊛ cur J yₙ)
  std::map<Key, PresheafNat> compositors; // y̲ -> convolution ⇒ cur J(⊗y̲)
  std::map<Key, bool> invertible;
  bool all_invertible = true;
  std::vector<std::string> report;
};
MonoidalCurryResult monoidal_curry(const MonoidalProfunctor& j, const MonoidalStructure& src,
                                   const MonoidalStructure& tgt);

/// Left Beck-Chevalley condition for a monoidal profunctor: for every x and
/// every target tuple y̲ of size ≤ N, the canonical map
///   ∫^{u̲} A(x, ⊗u̲) × J(u₁,y₁) × … × J(uₙ,yₙ)  →  J(x, ⊗y̲),
///   [s, q̲] ↦ λ(s, J_⊘(q̲))
/// is a bijection. The check is a complete finite enumeration, so success is
/// holds_exact; a failure names the first offending (x, y̲).
CheckResult monoidal_beck_chevalley(const MonoidalProfunctor& j, const MonoidalStructure& src,
                                    const MonoidalStructure& tgt);

// ---------------------------------------------------------------------------
// Doctrinal adjunction and Kan lifting
// ---------------------------------------------------------------------------

/// Lax structure on a right adjoint g of a pseudo monoidal f, by the mate
///   g_⊘ = g(⊗(ε_{y̲}) ∘ f_⊘⁻¹) ∘ η_{⊗(g y̲)}.
/// The report re-validates the result and checks that unit and counit
/// satisfy the monoidal-transformation axiom against the composite
/// structures (the vertical cells of the adjunction carry their structure).
/// Throws std::invalid_argument when f is not pseudo (or a compositor has no
/// inverse), when the transformations are not shaped like an adjunction
/// unit/counit for (f, g), or when a triangle identity fails.
struct DoctrinalResult {
  LaxMonoidalFunctor right;
  std::vector<std::string> report;
};
DoctrinalResult doctrinal_right_adjoint(const LaxMonoidalFunctor& f, const FinFunctor& g,
                                        const NatTransformation& unit,
                                        const NatTransformation& counit,
                                        const MonoidalStructure& src,
                                        const MonoidalStructure& tgt);

/// Lax structure on a pointwise left Kan extension l of d along a monoidal
/// J. For each arity n ≤ N the tensored unit χₙ = ⊗ₙ ∘ (η, …, η) over the
/// external power J^⊠ⁿ must again define a left Kan extension (the
/// preservation hypothesis, re-checked through defines_left_kan with the
/// actual factorization target added to the context); the compositor at y̲
/// is then the unique factorization of u̲ ↦ η(J_⊘(u̲)) ∘ d_⊘ through χₙ.
/// On success the result is re-validated and the factorization equations
/// (which make w's cell a structure-compatible cell) are re-checked into
/// report; on failure `lifted` is empty and `preservation` names the arity.
struct KanLiftResult {
  std::optional<LaxMonoidalFunctor> lifted;
  CheckResult preservation;
  std::vector<std::string> report;
};
KanLiftResult lift_lax_structure_on_kan(const LaxMonoidalFunctor& d, const MonoidalProfunctor& j,
                                        const KanWitness& w, const MonoidalStructure& src,
                                        const MonoidalStructure& mid, const MonoidalStructure& tgt,
                                        const Context& ctx);

// ---------------------------------------------------------------------------
// Product scaffolding (used by the Kan lift and its tests)
// ---------------------------------------------------------------------------

/// Product of finite categories; objects and morphisms are componentwise
/// tuples under atoms tup(..). An empty product is the one-object category
/// on tup().
FinCategory product_category(const std::vector<FinCategory>& factors);

/// n-fold product of a category with itself.
FinCategory power_category(const FinCategory& a, std::size_t n);

/// Componentwise action of f on the n-fold powers.
FinFunctor power_functor(const FinFunctor& f, std::size_t n);

/// ⊗ₙ as a functor from the n-th power of the base, read off the tables.
FinFunctor tensor_functor(const MonoidalStructure& m, std::size_t n);

/// External power J^⊠ⁿ: Aⁿ ⇸ Bⁿ with element tuples tup(u₁, …, uₙ).
Profunctor profunctor_power(const Profunctor& j, std::size_t n);

}  // namespace hvdc
