#include "hvdc/universal.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hvdc/construct.hpp"

namespace hvdc {

CheckResult CheckResult::exact(std::string detail) {
  return CheckResult{Verdict::holds_exact, std::move(detail), std::nullopt};
}

CheckResult CheckResult::bounded(std::string detail) {
  return CheckResult{Verdict::holds_bounded, std::move(detail), std::nullopt};
}

CheckResult CheckResult::failure(std::string detail, Cell witness) {
  return CheckResult{Verdict::fails, std::move(detail), std::move(witness)};
}

CheckResult CheckResult::failure(std::string detail) {
  return CheckResult{Verdict::fails, std::move(detail), std::nullopt};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds_exact: return "holds_exact";
    case Verdict::holds_bounded: return "holds_bounded";
    case Verdict::fails: return "fails";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Context helpers
// ---------------------------------------------------------------------------

namespace {

template <typename T>
void push_unique(std::vector<T>& xs, const T& x) {
  for (const auto& y : xs)
    if (y == x) return;
  xs.push_back(x);
}

}  // namespace

std::vector<FinCategory> context_categories(const Context& ctx) {
  std::vector<FinCategory> cats;
  for (const auto& p : ctx.profunctors) {
    push_unique(cats, p.source);
    push_unique(cats, p.target);
  }
  for (const auto& f : ctx.verticals) {
    push_unique(cats, f.source);
    push_unique(cats, f.target);
  }
  return cats;
}

std::vector<FinFunctor> verticals_from(const Context& ctx, const FinCategory& a) {
  std::vector<FinFunctor> out{identity_functor(a)};
  for (const auto& f : ctx.verticals)
    if (f.source == a) push_unique(out, f);
  return out;
}

std::vector<FinFunctor> verticals_into(const Context& ctx, const FinCategory& a) {
  std::vector<FinFunctor> out{identity_functor(a)};
  for (const auto& f : ctx.verticals)
    if (f.target == a) push_unique(out, f);
  return out;
}

namespace {

void extend_paths(const Context& ctx, std::vector<Profunctor>& cur, const FinCategory& at,
                  const FinCategory* end, std::size_t maxlen,
                  std::vector<std::vector<Profunctor>>& out) {
  if (end == nullptr || at == *end) out.push_back(cur);
  if (cur.size() == maxlen) return;
  for (const auto& p : ctx.profunctors) {
    if (!(p.source == at)) continue;
    cur.push_back(p);
    extend_paths(ctx, cur, p.target, end, maxlen, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Profunctor>> paths_between(const Context& ctx, const FinCategory& start,
                                                   const FinCategory& end, std::size_t maxlen) {
  std::vector<std::vector<Profunctor>> out;
  std::vector<Profunctor> cur;
  extend_paths(ctx, cur, start, &end, maxlen, out);
  return out;
}

std::vector<std::vector<Profunctor>> paths_from(const Context& ctx, const FinCategory& start,
                                                std::size_t maxlen) {
  std::vector<std::vector<Profunctor>> out;
  std::vector<Profunctor> cur;
  extend_paths(ctx, cur, start, nullptr, maxlen, out);
  return out;
}

std::vector<std::vector<Profunctor>> paths_into(const Context& ctx, const FinCategory& end,
                                                std::size_t maxlen) {
  std::vector<std::vector<Profunctor>> out;
  out.push_back({});
  for (const auto& s : context_categories(ctx)) {
    for (auto& p : paths_between(ctx, s, end, maxlen)) {
      if (!p.empty()) out.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void incompatible(const std::string& why) {
  throw std::invalid_argument("factorization: incompatible frames (" + why + ")");
}

/// Shape data for factoring χ through ψ at a slot: the segment of χ's source
/// path that the factor consumes, and which verticals are free vs forced.
struct SlotShape {
  std::vector<Profunctor> segment;
  bool left_free = false;   // factor's left vertical divides χ's (slot == 1)
  bool right_free = false;  // factor's right vertical divides χ's (slot == arity)
};

SlotShape slot_shape(const Cell& chi, const Cell& psi, std::size_t slot) {
  const std::size_t m = psi.frame.arity();
  if (!(chi.frame.target == psi.frame.target)) incompatible("targets differ");
  SlotShape shape;
  if (m == 0) {
    if (slot != 0) incompatible("arity-0 cell only factors at slot 0");
    shape.segment = chi.frame.src_path;
    shape.left_free = shape.right_free = true;
    return shape;
  }
  if (slot < 1 || slot > m) incompatible("slot out of range");
  const std::size_t csl = chi.frame.src_path.size();
  if (csl + 1 < m) incompatible("test source path shorter than the fixed legs");
  const std::size_t seg_len = csl - (m - 1);
  for (std::size_t i = 0; i + 1 < slot; ++i) {
    if (!(chi.frame.src_path[i] == psi.frame.src_path[i])) {
      incompatible("source paths differ left of the slot");
    }
  }
  for (std::size_t i = slot; i < m; ++i) {
    if (!(chi.frame.src_path[seg_len + i - 1] == psi.frame.src_path[i])) {
      incompatible("source paths differ right of the slot");
    }
  }
  shape.segment.assign(chi.frame.src_path.begin() + static_cast<std::ptrdiff_t>(slot - 1),
                       chi.frame.src_path.begin() + static_cast<std::ptrdiff_t>(slot - 1 + seg_len));
  shape.left_free = (slot == 1);
  shape.right_free = (slot == m);
  return shape;
}

/// The inner cells of the composite ψ ∘ (id, …, φ, …, id).
std::vector<Cell> slot_inners(const Cell& psi, std::size_t slot, const Cell& phi) {
  if (psi.frame.arity() == 0) return {phi};
  std::vector<Cell> inners;
  for (std::size_t i = 1; i <= psi.frame.arity(); ++i) {
    if (i == slot)
      inners.push_back(phi);
    else
      inners.push_back(identity_cell(psi.frame.src_path[i - 1]));
  }
  return inners;
}

/// Boundary category / profunctor the factor maps into at the given slot.
std::variant<Profunctor, FinCategory> slot_target(const Cell& psi, std::size_t slot) {
  if (psi.frame.arity() == 0) return psi.frame.start_cat();
  return psi.frame.src_path[slot - 1];
}

FinCategory variant_source(const std::variant<Profunctor, FinCategory>& t) {
  return std::holds_alternative<Profunctor>(t) ? std::get<Profunctor>(t).source
                                               : std::get<FinCategory>(t);
}

FinCategory variant_target(const std::variant<Profunctor, FinCategory>& t) {
  return std::holds_alternative<Profunctor>(t) ? std::get<Profunctor>(t).target
                                               : std::get<FinCategory>(t);
}

}  // namespace

std::vector<Cell> factor_through_at(const Cell& chi, const Cell& psi, std::size_t slot,
                                    const FinFunctor& h, const FinFunctor& k) {
  const SlotShape shape = slot_shape(chi, psi, slot);
  const auto target = slot_target(psi, slot);

  if (!(h.target == variant_source(target)) || !(k.target == variant_target(target))) {
    incompatible("divisor verticals do not land in the slot's boundary");
  }
  if (shape.left_free) {
    if (!(compose_functors(psi.frame.left, h) == chi.frame.left)) {
      incompatible("left vertical does not divide");
    }
  } else {
    if (!(h == identity_functor(h.source)) || !(chi.frame.left == psi.frame.left)) {
      incompatible("left vertical is fixed by an identity slot");
    }
  }
  if (shape.right_free) {
    if (!(compose_functors(psi.frame.right, k) == chi.frame.right)) {
      incompatible("right vertical does not divide");
    }
  } else {
    if (!(k == identity_functor(k.source)) || !(chi.frame.right == psi.frame.right)) {
      incompatible("right vertical is fixed by an identity slot");
    }
  }

  std::vector<Cell> out;
  for (const Cell& phi : enumerate_cells(CellFrame{shape.segment, h, k, target})) {
    if (vertical_compose(psi, slot_inners(psi, slot, phi)) == chi) out.push_back(phi);
  }
  return out;
}

std::vector<Cell> factor_through(const Cell& chi, const Cell& psi, std::size_t slot) {
  const SlotShape shape = slot_shape(chi, psi, slot);
  const auto target = slot_target(psi, slot);
  const FinCategory seg_start =
      shape.segment.empty() ? chi.frame.start_cat() : shape.segment.front().source;
  const FinCategory seg_end =
      shape.segment.empty() ? chi.frame.end_cat() : shape.segment.back().target;

  std::vector<FinFunctor> hs, ks;
  if (shape.left_free) {
    for (const auto& h : enumerate_functors(seg_start, variant_source(target))) {
      if (compose_functors(psi.frame.left, h) == chi.frame.left) hs.push_back(h);
    }
  } else {
    if (!(chi.frame.left == psi.frame.left)) return {};
    hs.push_back(identity_functor(variant_source(target)));
  }
  if (shape.right_free) {
    for (const auto& k : enumerate_functors(seg_end, variant_target(target))) {
      if (compose_functors(psi.frame.right, k) == chi.frame.right) ks.push_back(k);
    }
  } else {
    if (!(chi.frame.right == psi.frame.right)) return {};
    ks.push_back(identity_functor(variant_target(target)));
  }

  std::vector<Cell> out;
  for (const auto& h : hs) {
    for (const auto& k : ks) {
      auto found = factor_through_at(chi, psi, slot, h, k);
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

std::vector<Cell> factor_extension(const Cell& chi, const Cell& eta) {
  if (chi.frame.unary_target() || eta.frame.unary_target()) {
    incompatible("extension factoring needs nullary-target cells");
  }
  if (!(chi.frame.target_cat() == eta.frame.target_cat()) ||
      !(chi.frame.left == eta.frame.left)) {
    incompatible("test cell does not share the base cell's left boundary");
  }
  const std::size_t n = eta.frame.arity();
  if (chi.frame.arity() < n) incompatible("test source path shorter than the base's");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(chi.frame.src_path[i] == eta.frame.src_path[i])) {
      incompatible("test source path does not extend the base's");
    }
  }
  const std::vector<Profunctor> ext(chi.frame.src_path.begin() + static_cast<std::ptrdiff_t>(n),
                                    chi.frame.src_path.end());
  std::vector<Cell> out;
  for (const Cell& phi :
       enumerate_cells(CellFrame{ext, eta.frame.right, chi.frame.right, chi.frame.target})) {
    if (horizontal_compose(eta, phi) == chi) out.push_back(phi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Universal properties
// ---------------------------------------------------------------------------

namespace {

/// Exhaustive unique-factorization check for one test frame: composites of
/// all factor candidates are tallied, and every test cell must be hit exactly
/// once. Returns the failing CheckResult, or nullopt when all are unique.
std::optional<CheckResult> unique_factorization(
    const CellFrame& test_frame, const CellFrame& factor_frame,
    const std::function<Cell(const Cell&)>& compose, const std::string& what) {
  std::map<std::map<Key, Atom>, int> hits;
  for (const Cell& phi : enumerate_cells(factor_frame)) {
    Cell composite = compose(phi);
    if (!(composite.frame == test_frame)) {
      throw std::logic_error(what + ": composite frame mismatch in factorization check");
    }
    ++hits[composite.components];
  }
  for (const Cell& chi : enumerate_cells(test_frame)) {
    const auto it = hits.find(chi.components);
    const int n = (it == hits.end()) ? 0 : it->second;
    if (n != 1) {
      return CheckResult::failure(
          what + ": a test cell admits " + std::to_string(n) + " factorizations", chi);
    }
  }
  return std::nullopt;
}

std::string path_desc(std::size_t len, bool nullary_target) {
  return "test path length " + std::to_string(len) +
         (nullary_target ? ", nullary target" : ", unary target");
}

}  // namespace

CheckResult is_cartesian(const Cell& psi, const Context& ctx) {
  if (psi.frame.arity() > 1) {
    throw std::invalid_argument("is_cartesian: source path must have length at most 1");
  }
  const FinCategory a = psi.frame.start_cat();
  const FinCategory b = psi.frame.end_cat();
  const std::variant<Profunctor, FinCategory> factor_target =
      psi.frame.arity() == 1 ? std::variant<Profunctor, FinCategory>(psi.frame.src_path[0])
                             : std::variant<Profunctor, FinCategory>(a);

  for (const auto& h : verticals_into(ctx, a)) {
    for (const auto& k : verticals_into(ctx, b)) {
      for (const auto& hh : paths_between(ctx, h.source, k.source, ctx.max_path_len)) {
        const CellFrame test_frame{hh, compose_functors(psi.frame.left, h),
                                   compose_functors(psi.frame.right, k), psi.frame.target};
        const CellFrame factor_frame{hh, h, k, factor_target};
        auto bad = unique_factorization(
            test_frame, factor_frame,
            [&](const Cell& phi) { return vertical_compose(psi, {phi}); },
            "cartesian (" + path_desc(hh.size(), !psi.frame.unary_target()) + ")");
        if (bad) return *bad;
      }
    }
  }
  return CheckResult::bounded("unique factorization over context verticals and paths up to length " +
                              std::to_string(ctx.max_path_len));
}

namespace {

void require_cell_path(const std::vector<Cell>& phis, const std::string& who) {
  if (phis.empty()) throw std::invalid_argument(who + ": empty cell path");
  for (const auto& phi : phis) {
    if (!phi.frame.unary_target()) {
      throw std::invalid_argument(who + ": every cell in the path must have a unary target");
    }
  }
  for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
    if (!(phis[i].frame.right == phis[i + 1].frame.left)) {
      throw std::invalid_argument(who + ": cell path does not chain at position " +
                                  std::to_string(i + 2));
    }
  }
}

std::vector<Profunctor> concat_sources(const std::vector<Cell>& phis) {
  std::vector<Profunctor> out;
  for (const auto& phi : phis) {
    out.insert(out.end(), phi.frame.src_path.begin(), phi.frame.src_path.end());
  }
  return out;
}

}  // namespace

CheckResult is_weakly_cocartesian(const std::vector<Cell>& phis, const Context& ctx) {
  require_cell_path(phis, "is_weakly_cocartesian");
  const FinFunctor& f0 = phis.front().frame.left;
  const FinFunctor& fn = phis.back().frame.right;
  const FinCategory b0 = phis.front().frame.target_prof().source;
  const FinCategory bn = phis.back().frame.target_prof().target;
  const std::vector<Profunctor> src = concat_sources(phis);
  std::vector<Profunctor> tgt;
  for (const auto& phi : phis) tgt.push_back(phi.frame.target_prof());

  for (const auto& h : verticals_from(ctx, b0)) {
    for (const auto& k : verticals_from(ctx, bn)) {
      std::vector<std::variant<Profunctor, FinCategory>> out_targets;
      if (h.target == k.target) out_targets.emplace_back(h.target);
      std::vector<Profunctor> seen;
      for (const auto& p : ctx.profunctors) {
        if (!(p.source == h.target) || !(p.target == k.target)) continue;
        bool dup = false;
        for (const auto& q : seen) dup = dup || q == p;
        if (dup) continue;
        seen.push_back(p);
        out_targets.emplace_back(p);
      }
      for (const auto& out_t : out_targets) {
        const CellFrame test_frame{src, compose_functors(h, f0), compose_functors(k, fn), out_t};
        const CellFrame factor_frame{tgt, h, k, out_t};
        auto bad = unique_factorization(
            test_frame, factor_frame,
            [&](const Cell& outer) { return vertical_compose(outer, phis); },
            "weakly cocartesian (" +
                path_desc(src.size(), std::holds_alternative<FinCategory>(out_t)) + ")");
        if (bad) return *bad;
      }
    }
  }
  return CheckResult::bounded(
      "unique outer factorization over context verticals and targets of length at most 1");
}

CheckResult is_weakly_cocartesian(const Cell& phi, const Context& ctx) {
  return is_weakly_cocartesian(std::vector<Cell>{phi}, ctx);
}

CheckResult is_cocartesian_path(const std::vector<Cell>& phis, const Context& ctx) {
  require_cell_path(phis, "is_cocartesian_path");
  const FinFunctor& f0 = phis.front().frame.left;
  const FinFunctor& fn = phis.back().frame.right;
  const FinCategory b0 = phis.front().frame.target_prof().source;
  const FinCategory bn = phis.back().frame.target_prof().target;

  for (const auto& lp : paths_into(ctx, b0, ctx.max_path_len)) {
    for (const auto& rp : paths_from(ctx, bn, ctx.max_path_len)) {
      std::vector<Cell> padded;
      if (!lp.empty()) {
        for (std::size_t i = 0; i + 1 < lp.size(); ++i) padded.push_back(identity_cell(lp[i]));
        padded.push_back(restrict(lp.back(), identity_functor(lp.back().source), f0).cartesian_cell);
      }
      padded.insert(padded.end(), phis.begin(), phis.end());
      if (!rp.empty()) {
        padded.push_back(restrict(rp.front(), fn, identity_functor(rp.front().target)).cartesian_cell);
        for (std::size_t i = 1; i < rp.size(); ++i) padded.push_back(identity_cell(rp[i]));
      }
      auto weak = is_weakly_cocartesian(padded, ctx);
      if (!weak.ok()) {
        weak.detail = "cocartesian path (padding " + std::to_string(lp.size()) + "+" +
                      std::to_string(rp.size()) + "): " + weak.detail;
        return weak;
      }
    }
  }
  return CheckResult::bounded(
      "weakly cocartesian under all context paddings up to length " +
      std::to_string(ctx.max_path_len) + "; required restrictions exist by construction");
}

CheckResult is_pointwise_cocartesian(const Cell& phi, const Context& ctx) {
  if (!phi.frame.unary_target()) {
    throw std::invalid_argument("is_pointwise_cocartesian: unary-target cell required");
  }
  const Profunctor& k = phi.frame.target_prof();
  const bool right_id = phi.frame.right == identity_functor(phi.frame.right.source);
  const bool left_id = phi.frame.left == identity_functor(phi.frame.left.source);
  if (!right_id && !left_id) {
    throw std::invalid_argument(
        "is_pointwise_cocartesian: a boundary vertical must be an identity");
  }

  const std::size_t n = phi.frame.arity();
  if (right_id) {
    const FinCategory& b = k.target;
    for (const auto& f : verticals_into(ctx, b)) {
      std::vector<Cell> pad;
      if (n == 0) {
        pad.push_back(nullary_restrict(b, identity_functor(b), f).cartesian_cell);
      } else {
        for (std::size_t i = 0; i + 1 < n; ++i) pad.push_back(identity_cell(phi.frame.src_path[i]));
        const Profunctor& last = phi.frame.src_path.back();
        pad.push_back(restrict(last, identity_functor(last.source), f).cartesian_cell);
      }
      const Cell chi_f = vertical_compose(phi, pad);
      const RestrictionResult rk = restrict(k, identity_functor(k.source), f);
      auto factors = factor_through_at(chi_f, rk.cartesian_cell, 1, phi.frame.left,
                                       identity_functor(f.source));
      if (factors.size() != 1) {
        return CheckResult::failure("pointwise cocartesian: restriction factorization count " +
                                        std::to_string(factors.size()),
                                    chi_f);
      }
      auto inner = is_cocartesian_path({factors.front()}, ctx);
      if (!inner.ok()) {
        inner.detail = "pointwise cocartesian (restricted on the right): " + inner.detail;
        return inner;
      }
    }
    return CheckResult::bounded(
        "cocartesian after restricting along every context vertical into the right boundary");
  }

  const FinCategory& a = k.source;
  for (const auto& f : verticals_into(ctx, a)) {
    std::vector<Cell> pad;
    if (n == 0) {
      pad.push_back(nullary_restrict(a, f, identity_functor(a)).cartesian_cell);
    } else {
      const Profunctor& first = phi.frame.src_path.front();
      pad.push_back(restrict(first, f, identity_functor(first.target)).cartesian_cell);
      for (std::size_t i = 1; i < n; ++i) pad.push_back(identity_cell(phi.frame.src_path[i]));
    }
    const Cell chi_f = vertical_compose(phi, pad);
    const RestrictionResult rk = restrict(k, f, identity_functor(k.target));
    auto factors = factor_through_at(chi_f, rk.cartesian_cell, 1, identity_functor(f.source),
                                     phi.frame.right);
    if (factors.size() != 1) {
      return CheckResult::failure("pointwise cocartesian: restriction factorization count " +
                                      std::to_string(factors.size()),
                                  chi_f);
    }
    auto inner = is_cocartesian_path({factors.front()}, ctx);
    if (!inner.ok()) {
      inner.detail = "pointwise cocartesian (restricted on the left): " + inner.detail;
      return inner;
    }
  }
  return CheckResult::bounded(
      "cocartesian after restricting along every context vertical into the left boundary");
}

namespace {

/// Left-Kan factorization check for one base cell: every test cell extending
/// the base's source path by a context path must factor uniquely as a
/// horizontal composite base ⋆ φ. maxm bounds the extension length.
std::optional<CheckResult> kan_factorizations(const Cell& base, const Context& ctx,
                                              std::size_t maxm) {
  const FinCategory& m_cat = base.frame.target_cat();
  for (const auto& ext : paths_from(ctx, base.frame.right.source, maxm)) {
    const FinCategory c = ext.empty() ? base.frame.right.source : ext.back().target;
    std::vector<FinFunctor> lps;
    if (base.frame.right.source == c) push_unique(lps, base.frame.right);
    if (c == m_cat) push_unique(lps, identity_functor(c));
    for (const auto& v : ctx.verticals) {
      if (v.source == c && v.target == m_cat) push_unique(lps, v);
    }
    for (const auto& lp : lps) {
      std::vector<Profunctor> src = base.frame.src_path;
      src.insert(src.end(), ext.begin(), ext.end());
      const CellFrame test_frame{src, base.frame.left, lp, m_cat};
      const CellFrame factor_frame{ext, base.frame.right, lp, m_cat};
      auto bad = unique_factorization(
          test_frame, factor_frame,
          [&](const Cell& phi) { return horizontal_compose(base, phi); },
          "left Kan (extension length " + std::to_string(ext.size()) + ")");
      if (bad) return bad;
    }
  }
  return std::nullopt;
}

}  // namespace

CheckResult defines_left_kan(const Cell& eta, const Context& ctx, KanMode mode) {
  if (eta.frame.unary_target()) {
    throw std::invalid_argument("defines_left_kan: nullary-target cell required");
  }
  if (mode == KanMode::weak || mode == KanMode::full) {
    const std::size_t maxm = (mode == KanMode::weak) ? 0 : ctx.max_path_len;
    if (auto bad = kan_factorizations(eta, ctx, maxm)) return *bad;
    return CheckResult::bounded(
        mode == KanMode::weak
            ? "unique vertical factorization for all context test cells"
            : "unique factorization for all context extensions up to length " +
                  std::to_string(ctx.max_path_len));
  }

  const std::size_t n = eta.frame.arity();
  const FinCategory& b = eta.frame.right.source;
  for (const auto& f : verticals_into(ctx, b)) {
    std::vector<Cell> pad;
    if (n == 0) {
      pad.push_back(nullary_restrict(b, identity_functor(b), f).cartesian_cell);
    } else {
      for (std::size_t i = 0; i + 1 < n; ++i) pad.push_back(identity_cell(eta.frame.src_path[i]));
      const Profunctor& last = eta.frame.src_path.back();
      pad.push_back(restrict(last, identity_functor(last.source), f).cartesian_cell);
    }
    const Cell eta_f = vertical_compose(eta, pad);
    if (auto bad = kan_factorizations(eta_f, ctx, ctx.max_path_len)) {
      bad->detail = "pointwise left Kan (restricted last leg): " + bad->detail;
      return *bad;
    }
  }
  return CheckResult::bounded(
      "left Kan property preserved by restricting along every context vertical into the apex "
      "boundary");
}

}  // namespace hvdc
