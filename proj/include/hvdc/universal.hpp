#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hvdc/profcells.hpp"

namespace hvdc {

/// Declared verification regime for universally quantified cell properties.
/// Quantifiers over "all test frames" range over the profunctors and vertical
/// morphisms listed here (identity functors are always included implicitly)
/// and over composable paths of the listed profunctors up to max_path_len.
struct Context {
  std::vector<Profunctor> profunctors;
  std::vector<FinFunctor> verticals;
  std::size_t max_path_len = 2;
};

enum class Verdict { holds_exact, holds_bounded, fails };

/// Outcome of a universal-property check. holds_exact is reserved for
/// theorem-backed constructions; checks quantified over a Context report
/// holds_bounded. A fails verdict carries a witness cell whenever the
/// counterexample has cell form (a test cell with zero or several
/// factorizations); element-level counterexamples are named in detail.
struct CheckResult {
  Verdict verdict = Verdict::fails;
  std::string detail;
  std::optional<Cell> witness;

  bool ok() const { return verdict != Verdict::fails; }

  static CheckResult exact(std::string detail = "");
  static CheckResult bounded(std::string detail = "");
  static CheckResult failure(std::string detail, Cell witness);
  static CheckResult failure(std::string detail);
};

std::string to_string(Verdict v);

// ---------------------------------------------------------------------------
// Context helpers
// ---------------------------------------------------------------------------

/// Every category appearing in the context (profunctor boundaries and
/// functor endpoints), deduplicated, in first-seen order.
std::vector<FinCategory> context_categories(const Context& ctx);

/// Context verticals with the given source, plus the identity functor.
std::vector<FinFunctor> verticals_from(const Context& ctx, const FinCategory& a);

/// Context verticals with the given target, plus the identity functor.
std::vector<FinFunctor> verticals_into(const Context& ctx, const FinCategory& a);

/// Composable paths of context profunctors from `start` to `end`, of length
/// 0..maxlen. The empty path is included exactly when start == end.
std::vector<std::vector<Profunctor>> paths_between(const Context& ctx, const FinCategory& start,
                                                   const FinCategory& end, std::size_t maxlen);

/// Composable paths of context profunctors starting at `start` (any end).
std::vector<std::vector<Profunctor>> paths_from(const Context& ctx, const FinCategory& start,
                                                std::size_t maxlen);

/// Composable paths of context profunctors ending at `end` (any start).
std::vector<std::vector<Profunctor>> paths_into(const Context& ctx, const FinCategory& end,
                                                std::size_t maxlen);

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// All cells φ over the pinned verticals (h, k) whose ψ-composite at the given
/// slot equals χ. For slot s in 1..arity(ψ) the composite is
/// ψ ∘ (id, …, φ, …, id) with φ in slot s; φ's source path is the matching
/// segment of χ's source path and its target is ψ's s-th source leg. For
/// arity-0 ψ the slot must be 0 and φ is a cell into ψ's boundary category.
/// Throws std::invalid_argument when the frames cannot match.
std::vector<Cell> factor_through_at(const Cell& chi, const Cell& psi, std::size_t slot,
                                    const FinFunctor& h, const FinFunctor& k);

/// The complete list of cells φ (over any divisor verticals) whose ψ-composite
/// at the given slot equals χ. Divisor verticals are found by exhaustive
/// search, so this is intended for desk-scale instances.
std::vector<Cell> factor_through(const Cell& chi, const Cell& psi, std::size_t slot);

/// All cells φ with horizontal composite η ⋆ φ equal to χ, where η and χ are
/// nullary cells into the same category and χ's source path extends η's.
/// This is the factorization shape used by left Kan extensions.
std::vector<Cell> factor_extension(const Cell& chi, const Cell& eta);

// ---------------------------------------------------------------------------
// Universal properties
// ---------------------------------------------------------------------------

/// ψ (source path of length ≤ 1) is cartesian when every test cell χ over
/// divided verticals factors uniquely through ψ. Test cells range over
/// context paths and verticals; the verdict is holds_bounded on success.
CheckResult is_cartesian(const Cell& psi, const Context& ctx);

/// The path φ1..φn of unary-target cells is weakly cocartesian when every
/// test cell out of its concatenated source path factors uniquely through it
/// as a cell out of the target path K1..Kn. Test targets are context
/// profunctors or a boundary category (nullary).
CheckResult is_weakly_cocartesian(const std::vector<Cell>& phis, const Context& ctx);
CheckResult is_weakly_cocartesian(const Cell& phi, const Context& ctx);

/// Full cocartesianness: the path is weakly cocartesian and remains so after
/// padding on either side with identity cells and one restriction cell, for
/// all context paths of padding length up to max_path_len. (The required
/// restrictions always exist here, so that condition is discharged by
/// construction.)
CheckResult is_cocartesian_path(const std::vector<Cell>& phis, const Context& ctx);

/// Pointwise cocartesianness of a single unary-target cell whose left or
/// right boundary vertical is an identity. For every context vertical f into
/// the identity-side boundary, the cell is composed with the restriction cell
/// of its outer source leg along f, factored through the restriction of its
/// target along f, and the factored cell must be cocartesian. Taking f = id
/// recovers plain cocartesianness. Throws std::invalid_argument when neither
/// boundary vertical is an identity.
CheckResult is_pointwise_cocartesian(const Cell& phi, const Context& ctx);

enum class KanMode { weak, full, pointwise };

/// η: (J1..Jn) ⇒ M (nullary) over (d, l) exhibits l as a left Kan extension
/// of d along the source path.
///   weak:      test cells share η's source path; the factor is a vertical
///              cell l ⇒ l′ and the composite is horizontal (postcompose).
///   full:      test cells extend the source path by context paths H1..Hm of
///              length ≤ max_path_len; the factor is a cell (H1..Hm) ⇒ M.
///   pointwise: the full property must survive restricting the last source
///              leg along every context vertical into its target (for n = 0,
///              restricting the boundary category's hom profunctor).
/// Throws std::invalid_argument when η has a unary target.
CheckResult defines_left_kan(const Cell& eta, const Context& ctx, KanMode mode);

}  // namespace hvdc
