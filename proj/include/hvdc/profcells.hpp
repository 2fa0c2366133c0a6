#pragma once

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "hvdc/fincore.hpp"

namespace hvdc {

/// Set-valued profunctor J: A ⇸ B — a family of sets J(x,y) for x ∈ A, y ∈ B
/// with a left A-action λ (contravariant) and a right B-action ρ (covariant),
/// i.e. a bimodule. Element atoms are globally distinct across fibers, so an
/// element determines its position.
struct Profunctor {
  FinCategory source;  // A
  FinCategory target;  // B
  std::map<AtomPair, FinSet> elems;  // (x, y) -> J(x, y); empty fibers omitted
  std::map<AtomPair, Atom> lact;     // (a: x'→x, u ∈ J(x,y)) -> λ(a,u) ∈ J(x',y)
  std::map<AtomPair, Atom> ract;     // (u ∈ J(x,y), b: y→y') -> ρ(u,b) ∈ J(x,y')

  // Derived element -> (x, y) index; rebuilt by normalize(), ignored by ==.
  std::map<Atom, AtomPair> pos;

  void normalize();
  static Profunctor build(FinCategory source, FinCategory target,
                          std::map<AtomPair, FinSet> elems, std::map<AtomPair, Atom> lact,
                          std::map<AtomPair, Atom> ract);

  const FinSet& at(const Atom& x, const Atom& y) const;
  bool has_elem(const Atom& u) const { return pos.count(u) != 0; }
  const AtomPair& position(const Atom& u) const;
  /// λ(a, u) for a: x'→x and u ∈ J(x, y).
  const Atom& left(const Atom& a, const Atom& u) const;
  /// ρ(u, b) for u ∈ J(x, y) and b: y→y'.
  const Atom& right(const Atom& u, const Atom& b) const;
  std::vector<Atom> all_elems() const;

  friend bool operator==(const Profunctor& a, const Profunctor& b) {
    return a.source == b.source && a.target == b.target && a.elems == b.elems &&
           a.lact == b.lact && a.ract == b.ract;
  }
};

/// Hom-profunctor I_A: A ⇸ A; fibers are the hom-sets, both actions are
/// composition. This is the horizontal unit.
Profunctor hom_profunctor(const FinCategory& a);

/// Empty report iff the bimodule axioms hold (action totality, typing,
/// unit, associativity, and λ/ρ compatibility).
std::vector<std::string> validate_profunctor(const Profunctor& j);

/// Boundary of a cell: a source path J1..Jn (n ≥ 0), outer vertical functors
/// f (left) and g (right), and a target that is either one profunctor K
/// (unary) or a category C (nullary). For n = 0, f and g share their source.
struct CellFrame {
  std::vector<Profunctor> src_path;
  FinFunctor left;
  FinFunctor right;
  std::variant<Profunctor, FinCategory> target;

  std::size_t arity() const { return src_path.size(); }
  bool unary_target() const { return std::holds_alternative<Profunctor>(target); }
  const Profunctor& target_prof() const { return std::get<Profunctor>(target); }
  const FinCategory& target_cat() const { return std::get<FinCategory>(target); }
  /// Source category of the left vertical (A0) / right vertical (An).
  const FinCategory& start_cat() const { return left.source; }
  const FinCategory& end_cat() const { return right.source; }

  friend bool operator==(const CellFrame&, const CellFrame&) = default;
};

std::vector<std::string> validate_frame(const CellFrame& frame);

/// Component key: a composable tuple (u1..un) of path elements; for arity 0
/// a single object of the shared source category.
using Key = std::vector<Atom>;

/// All component keys of a frame, in canonical order.
std::vector<Key> frame_keys(const CellFrame& frame);

/// All composable element tuples of a nonempty path, with their end objects.
std::vector<std::pair<Key, AtomPair>> path_chains(const std::vector<Profunctor>& path);

/// Visits every generating identification between element tuples of a path:
/// for each seam and each non-identity seam morphism m, the tuple with m
/// absorbed into the left slot (by ρ) and into the right slot (by λ).
void for_each_seam_identification(const std::vector<Profunctor>& path,
                                  const std::function<void(const Key& lhs, const Key& rhs)>& visit);

/// A cell: a frame plus one component per key. Components land in
/// K(f x0, g xn) for a unary target and in hom(f x0, g xn) for a nullary one.
struct Cell {
  CellFrame frame;
  std::map<Key, Atom> components;

  const Atom& at(const Key& k) const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Empty report iff the frame is well-formed, the component table is total,
/// typed, and satisfies all equivariance axioms (external on both ends,
/// internal at every seam; for arity 0, naturality).
std::vector<std::string> validate_cell(const Cell& cell);

/// Horizontal identity cell id_J: (J) ⇒ J over identity verticals.
Cell identity_cell(const Profunctor& j);

/// Vertical identity cell id_f: the nullary cell over (f, f) with components
/// x ↦ id_{f x}.
Cell identity_vertical_cell(const FinFunctor& f);

/// Vertical composite ψ∘(φ1..φk). The unary-target φ's fill ψ's source slots
/// in order; nullary-target φ's sit at the seams and are absorbed through the
/// neighbouring actions (or through ψ's components when everything is
/// nullary). Verticals must chain; outer verticals compose.
Cell vertical_compose(const Cell& psi, const std::vector<Cell>& phis);

/// Horizontal composite φ⋆ψ := id∘(φ,ψ), defined when φ's right vertical is
/// ψ's left vertical and at most one of the targets is unary.
Cell horizontal_compose(const Cell& phi, const Cell& psi);

/// All cells with the given frame, in deterministic order. Exhaustive search
/// with equivariance pruning, bounded by the enumeration budget.
std::vector<Cell> enumerate_cells(const CellFrame& frame);

/// Per-key domain restriction: receives the key and the full codomain fiber,
/// returns the allowed values (order is kept canonical by the caller).
using DomainFn = std::function<std::vector<Atom>(const Key&, const FinSet&)>;

/// enumerate_cells with per-key restricted domains; if `limit` > 0, stops
/// after that many cells have been found.
std::vector<Cell> enumerate_cells_where(const CellFrame& frame, const DomainFn& domain,
                                        std::size_t limit = 0);

}  // namespace hvdc
