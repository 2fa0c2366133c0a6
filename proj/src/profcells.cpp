#include "hvdc/profcells.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hvdc/util.hpp"

namespace hvdc {

namespace {

const FinSet& empty_fin_set() {
  static const FinSet empty;
  return empty;
}

std::string key_str(const Key& k) { return "(" + join(k, ", ") + ")"; }

}  // namespace

// ---------------------------------------------------------------------------
// Profunctor
// ---------------------------------------------------------------------------

void Profunctor::normalize() {
  for (auto it = elems.begin(); it != elems.end();) {
    if (it->second.elems.empty()) {
      it = elems.erase(it);
    } else {
      ++it;
    }
  }
  pos.clear();
  for (const auto& [xy, fiber] : elems) {
    for (const auto& u : fiber.elems) pos[u] = xy;
  }
}

Profunctor Profunctor::build(FinCategory source, FinCategory target,
                             std::map<AtomPair, FinSet> elems, std::map<AtomPair, Atom> lact,
                             std::map<AtomPair, Atom> ract) {
  Profunctor j;
  j.source = std::move(source);
  j.target = std::move(target);
  j.elems = std::move(elems);
  j.lact = std::move(lact);
  j.ract = std::move(ract);
  j.normalize();
  return j;
}

const FinSet& Profunctor::at(const Atom& x, const Atom& y) const {
  auto it = elems.find({x, y});
  return it == elems.end() ? empty_fin_set() : it->second;
}

const AtomPair& Profunctor::position(const Atom& u) const {
  auto it = pos.find(u);
  if (it == pos.end()) throw std::out_of_range("profunctor has no element '" + u + "'");
  return it->second;
}

const Atom& Profunctor::left(const Atom& a, const Atom& u) const {
  auto it = lact.find({a, u});
  if (it == lact.end()) {
    throw std::out_of_range("profunctor has no left action for (" + a + ", " + u + ")");
  }
  return it->second;
}

const Atom& Profunctor::right(const Atom& u, const Atom& b) const {
  auto it = ract.find({u, b});
  if (it == ract.end()) {
    throw std::out_of_range("profunctor has no right action for (" + u + ", " + b + ")");
  }
  return it->second;
}

std::vector<Atom> Profunctor::all_elems() const {
  std::vector<Atom> out;
  for (const auto& [xy, fiber] : elems) {
    out.insert(out.end(), fiber.elems.begin(), fiber.elems.end());
  }
  return out;
}

Profunctor hom_profunctor(const FinCategory& a) {
  std::map<AtomPair, FinSet> elems;
  for (const auto& [xy, fiber] : a.hom) elems[xy] = fiber;
  std::map<AtomPair, Atom> lact, ract;
  for (const auto& [xy, fiber] : a.hom) {
    for (const auto& u : fiber.elems) {
      for (const auto& m : a.morphisms()) {
        if (a.cod(m) == xy.first) lact[{m, u}] = a.compose(u, m);
        if (a.dom(m) == xy.second) ract[{u, m}] = a.compose(m, u);
      }
    }
  }
  return Profunctor::build(a, a, std::move(elems), std::move(lact), std::move(ract));
}

std::vector<std::string> validate_profunctor(const Profunctor& j) {
  std::vector<std::string> errors;
  for (const auto& e : validate_category(j.source)) errors.push_back("source category: " + e);
  for (const auto& e : validate_category(j.target)) errors.push_back("target category: " + e);
  if (!errors.empty()) return errors;

  // Fibers: keyed by object pairs, pairwise disjoint.
  std::map<Atom, AtomPair> seen;
  for (const auto& [xy, fiber] : j.elems) {
    if (!j.source.has_object(xy.first) || !j.target.has_object(xy.second)) {
      errors.push_back("fiber (" + xy.first + ", " + xy.second + ") not indexed by objects");
      continue;
    }
    for (const auto& u : fiber.elems) {
      auto [it, fresh] = seen.emplace(u, xy);
      if (!fresh) {
        errors.push_back("element '" + u + "' appears in fibers (" + it->second.first + ", " +
                         it->second.second + ") and (" + xy.first + ", " + xy.second + ")");
      }
    }
  }
  if (!errors.empty()) return errors;

  // Action totality and typing.
  std::size_t expected_lact = 0, expected_ract = 0;
  for (const auto& [xy, fiber] : j.elems) {
    const auto& [x, y] = xy;
    for (const auto& u : fiber.elems) {
      for (const auto& a : j.source.morphisms()) {
        if (j.source.cod(a) != x) continue;
        ++expected_lact;
        auto it = j.lact.find({a, u});
        if (it == j.lact.end()) {
          errors.push_back("lact: missing value for (" + a + ", " + u + ")");
        } else if (!j.at(j.source.dom(a), y).contains(it->second)) {
          errors.push_back("lact: value for (" + a + ", " + u + ") lies outside fiber (" +
                           j.source.dom(a) + ", " + y + ")");
        }
      }
      for (const auto& b : j.target.morphisms()) {
        if (j.target.dom(b) != y) continue;
        ++expected_ract;
        auto it = j.ract.find({u, b});
        if (it == j.ract.end()) {
          errors.push_back("ract: missing value for (" + u + ", " + b + ")");
        } else if (!j.at(x, j.target.cod(b)).contains(it->second)) {
          errors.push_back("ract: value for (" + u + ", " + b + ") lies outside fiber (" + x +
                           ", " + j.target.cod(b) + ")");
        }
      }
    }
  }
  if (j.lact.size() != expected_lact) {
    errors.push_back("lact: table has entries for non-acting pairs");
  }
  if (j.ract.size() != expected_ract) {
    errors.push_back("ract: table has entries for non-acting pairs");
  }
  if (!errors.empty()) return errors;

  // Unit, associativity, and compatibility of the two actions.
  for (const auto& [xy, fiber] : j.elems) {
    const auto& [x, y] = xy;
    for (const auto& u : fiber.elems) {
      if (j.left(j.source.id(x), u) != u) {
        errors.push_back("lact: identity action moves '" + u + "'");
      }
      if (j.right(u, j.target.id(y)) != u) {
        errors.push_back("ract: identity action moves '" + u + "'");
      }
      for (const auto& a : j.source.morphisms()) {
        if (j.source.cod(a) != x) continue;
        for (const auto& a2 : j.source.morphisms()) {
          if (j.source.cod(a2) != j.source.dom(a)) continue;
          if (j.left(a2, j.left(a, u)) != j.left(j.source.compose(a, a2), u)) {
            errors.push_back("lact: associativity fails at (" + a2 + ", " + a + ", " + u + ")");
          }
        }
        for (const auto& b : j.target.morphisms()) {
          if (j.target.dom(b) != y) continue;
          if (j.right(j.left(a, u), b) != j.left(a, j.right(u, b))) {
            errors.push_back("actions do not commute at (" + a + ", " + u + ", " + b + ")");
          }
        }
      }
      for (const auto& b : j.target.morphisms()) {
        if (j.target.dom(b) != y) continue;
        for (const auto& b2 : j.target.morphisms()) {
          if (j.target.dom(b2) != j.target.cod(b)) continue;
          if (j.right(j.right(u, b), b2) != j.right(u, j.target.compose(b2, b))) {
            errors.push_back("ract: associativity fails at (" + u + ", " + b + ", " + b2 + ")");
          }
        }
      }
    }
  }
  return errors;
}

// ---------------------------------------------------------------------------
// Frames and keys
// ---------------------------------------------------------------------------

std::vector<std::string> validate_frame(const CellFrame& frame) {
  std::vector<std::string> errors;
  for (std::size_t i = 0; i < frame.src_path.size(); ++i) {
    for (const auto& e : validate_profunctor(frame.src_path[i])) {
      errors.push_back("source slot " + std::to_string(i + 1) + ": " + e);
    }
  }
  if (frame.unary_target()) {
    for (const auto& e : validate_profunctor(frame.target_prof())) {
      errors.push_back("target: " + e);
    }
  } else {
    for (const auto& e : validate_category(frame.target_cat())) {
      errors.push_back("target category: " + e);
    }
  }
  for (const auto& e : validate_functor(frame.left)) errors.push_back("left vertical: " + e);
  for (const auto& e : validate_functor(frame.right)) errors.push_back("right vertical: " + e);
  if (!errors.empty()) return errors;

  for (std::size_t i = 0; i + 1 < frame.src_path.size(); ++i) {
    if (!(frame.src_path[i].target == frame.src_path[i + 1].source)) {
      errors.push_back("source path: slot " + std::to_string(i + 2) +
                       " does not start where slot " + std::to_string(i + 1) + " ends");
    }
  }
  if (frame.arity() == 0) {
    if (!(frame.left.source == frame.right.source)) {
      errors.push_back("verticals of a nullary-source cell must share their source");
    }
  } else {
    if (!(frame.left.source == frame.src_path.front().source)) {
      errors.push_back("left vertical does not start at the source path's first category");
    }
    if (!(frame.right.source == frame.src_path.back().target)) {
      errors.push_back("right vertical does not start at the source path's last category");
    }
  }
  if (frame.unary_target()) {
    if (!(frame.left.target == frame.target_prof().source)) {
      errors.push_back("left vertical does not land in the target's source category");
    }
    if (!(frame.right.target == frame.target_prof().target)) {
      errors.push_back("right vertical does not land in the target's target category");
    }
  } else {
    if (!(frame.left.target == frame.target_cat()) || !(frame.right.target == frame.target_cat())) {
      errors.push_back("verticals of a nullary-target cell must land in the target category");
    }
  }
  return errors;
}

namespace {

/// Enumerates composable tuples of path[lo..hi), optionally pinned to start
/// at `from`; calls emit(tuple, start, end) for each.
void enum_chains(const std::vector<Profunctor>& path, std::size_t lo, std::size_t hi,
                 const std::optional<Atom>& from,
                 const std::function<void(const Key&, const Atom&, const Atom&)>& emit) {
  if (lo == hi) {
    if (from) emit({}, *from, *from);
    return;
  }
  Key cur;
  Atom start;
  std::function<void(std::size_t, const std::optional<Atom>&)> rec =
      [&](std::size_t i, const std::optional<Atom>& at) {
        if (i == hi) {
          emit(cur, start, *at);
          return;
        }
        for (const auto& [xy, fiber] : path[i].elems) {
          if (at && xy.first != *at) continue;
          if (i == lo) start = xy.first;
          for (const auto& u : fiber.elems) {
            cur.push_back(u);
            rec(i + 1, xy.second);
            cur.pop_back();
          }
        }
      };
  rec(lo, from);
}

/// (x0, xn) for a component key.
AtomPair key_ends(const CellFrame& frame, const Key& key) {
  if (frame.arity() == 0) return {key.at(0), key.at(0)};
  return {frame.src_path.front().position(key.front()).first,
          frame.src_path.back().position(key.back()).second};
}

}  // namespace

std::vector<Key> frame_keys(const CellFrame& frame) {
  std::vector<Key> keys;
  if (frame.arity() == 0) {
    for (const auto& x : frame.start_cat().objects.elems) keys.push_back({x});
    return keys;
  }
  enum_chains(frame.src_path, 0, frame.src_path.size(), std::nullopt,
              [&](const Key& k, const Atom&, const Atom&) { keys.push_back(k); });
  return keys;
}

std::vector<std::pair<Key, AtomPair>> path_chains(const std::vector<Profunctor>& path) {
  std::vector<std::pair<Key, AtomPair>> out;
  enum_chains(path, 0, path.size(), std::nullopt,
              [&](const Key& k, const Atom& s, const Atom& e) { out.push_back({k, {s, e}}); });
  return out;
}

void for_each_seam_identification(
    const std::vector<Profunctor>& path,
    const std::function<void(const Key& lhs, const Key& rhs)>& visit) {
  const std::size_t n = path.size();
  for (std::size_t s = 1; s < n; ++s) {
    const FinCategory& seam = path[s].source;
    enum_chains(path, 0, s, std::nullopt, [&](const Key& prefix, const Atom&, const Atom& w) {
      for (const auto& m : seam.morphisms()) {
        if (seam.dom(m) != w || m == seam.id(w)) continue;
        enum_chains(path, s, n, seam.cod(m), [&](const Key& suffix, const Atom&, const Atom&) {
          Key lhs = prefix;
          lhs.back() = path[s - 1].right(prefix.back(), m);
          lhs.insert(lhs.end(), suffix.begin(), suffix.end());
          Key rhs = prefix;
          rhs.push_back(path[s].left(m, suffix.front()));
          rhs.insert(rhs.end(), suffix.begin() + 1, suffix.end());
          visit(lhs, rhs);
        });
      }
    });
  }
}

const Atom& Cell::at(const Key& k) const {
  auto it = components.find(k);
  if (it == components.end()) {
    throw std::out_of_range("cell has no component at key " + key_str(k));
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Cell validation
// ---------------------------------------------------------------------------

std::vector<std::string> validate_cell(const Cell& cell) {
  std::vector<std::string> errors = validate_frame(cell.frame);
  if (!errors.empty()) return errors;

  const CellFrame& frame = cell.frame;
  const std::size_t n = frame.arity();

  // Totality: exactly one component per key.
  const std::vector<Key> keys = frame_keys(frame);
  const std::set<Key> key_set(keys.begin(), keys.end());
  for (const auto& k : keys) {
    if (!cell.components.count(k)) {
      errors.push_back("missing component at key " + key_str(k));
    }
  }
  for (const auto& [k, v] : cell.components) {
    if (!key_set.count(k)) errors.push_back("component at non-key " + key_str(k));
  }
  if (!errors.empty()) return errors;

  // Typing: each component lies in the fiber/hom-set over the key's ends.
  for (const auto& k : keys) {
    const auto [x0, xn] = key_ends(frame, k);
    const Atom fx = frame.left.ob(x0);
    const Atom gx = frame.right.ob(xn);
    const Atom& v = cell.at(k);
    const FinSet& codomain =
        frame.unary_target() ? frame.target_prof().at(fx, gx) : frame.target_cat().hom_set(fx, gx);
    if (!codomain.contains(v)) {
      errors.push_back("component at " + key_str(k) + " lies outside (" + fx + ", " + gx + ")");
    }
  }
  if (!errors.empty()) return errors;

  const FinFunctor& f = frame.left;
  const FinFunctor& g = frame.right;

  if (n == 0) {
    // Naturality of the object-indexed family.
    const FinCategory& a0 = frame.start_cat();
    for (const auto& a : a0.morphisms()) {
      const Atom& vx = cell.at({a0.dom(a)});
      const Atom& vy = cell.at({a0.cod(a)});
      bool ok;
      if (frame.unary_target()) {
        const Profunctor& k = frame.target_prof();
        ok = k.left(f.mor(a), vy) == k.right(vx, g.mor(a));
      } else {
        const FinCategory& c = frame.target_cat();
        ok = c.compose(vy, f.mor(a)) == c.compose(g.mor(a), vx);
      }
      if (!ok) errors.push_back("naturality fails at morphism '" + a + "'");
    }
    return errors;
  }

  // External equivariance at the left end.
  const FinCategory& a0 = frame.start_cat();
  for (const auto& key : keys) {
    const Atom x0 = frame.src_path.front().position(key.front()).first;
    const Atom& v = cell.at(key);
    for (const auto& a : a0.morphisms()) {
      if (a0.cod(a) != x0) continue;
      Key moved = key;
      moved.front() = frame.src_path.front().left(a, key.front());
      const Atom expect = frame.unary_target()
                              ? frame.target_prof().left(f.mor(a), v)
                              : frame.target_cat().compose(v, f.mor(a));
      if (cell.at(moved) != expect) {
        errors.push_back("left equivariance fails at " + key_str(key) + " with '" + a + "'");
      }
    }
  }

  // External equivariance at the right end.
  const FinCategory& an = frame.end_cat();
  for (const auto& key : keys) {
    const Atom xn = frame.src_path.back().position(key.back()).second;
    const Atom& v = cell.at(key);
    for (const auto& b : an.morphisms()) {
      if (an.dom(b) != xn) continue;
      Key moved = key;
      moved.back() = frame.src_path.back().right(key.back(), b);
      const Atom expect = frame.unary_target()
                              ? frame.target_prof().right(v, g.mor(b))
                              : frame.target_cat().compose(g.mor(b), v);
      if (cell.at(moved) != expect) {
        errors.push_back("right equivariance fails at " + key_str(key) + " with '" + b + "'");
      }
    }
  }

  // Internal equivariance at each seam: moving a morphism across the seam by
  // the right action on one side or the left action on the other gives keys
  // with equal components.
  for_each_seam_identification(frame.src_path, [&](const Key& lhs, const Key& rhs) {
    if (cell.at(lhs) != cell.at(rhs)) {
      errors.push_back("seam equivariance fails between " + key_str(lhs) + " and " + key_str(rhs));
    }
  });
  return errors;
}

// ---------------------------------------------------------------------------
// Identity cells
// ---------------------------------------------------------------------------

Cell identity_cell(const Profunctor& j) {
  Cell cell;
  cell.frame = CellFrame{{j}, identity_functor(j.source), identity_functor(j.target), j};
  for (const auto& key : frame_keys(cell.frame)) cell.components[key] = key.front();
  return cell;
}

Cell identity_vertical_cell(const FinFunctor& f) {
  Cell cell;
  cell.frame = CellFrame{{}, f, f, f.target};
  for (const auto& x : f.source.objects.elems) {
    cell.components[{x}] = f.target.id(f.ob(x));
  }
  return cell;
}

// ---------------------------------------------------------------------------
// Vertical composition
// ---------------------------------------------------------------------------

namespace {

/// One evaluated inner cell: either an element of the outer source path's
/// slot `slot`, or a morphism of the seam category.
struct InnerOutput {
  bool is_elem;
  Atom value;
  std::size_t slot = 0;
  const FinCategory* seam = nullptr;
};

struct AbsorbedKey {
  bool morphism_only = false;
  Key key;   // outer key, when !morphism_only
  Atom mor;  // composed seam morphism, when morphism_only
  const FinCategory* seam = nullptr;
};

/// Evaluates each cell of `phis` on its segment of `key` and absorbs seam
/// morphisms into neighbouring elements: a pending morphism acts on the next
/// element from the left, a trailing one acts on the last element from the
/// right. Only when every cell is nullary-target does a bare morphism remain.
AbsorbedKey absorb_through(const std::vector<Cell>& phis, const Key& key) {
  // Targets of the unary-target cells, i.e. the outer source path.
  std::vector<const Profunctor*> outer;
  for (const auto& phi : phis) {
    if (phi.frame.unary_target()) outer.push_back(&phi.frame.target_prof());
  }

  std::size_t total = 0;
  for (const auto& phi : phis) total += phi.frame.arity();

  // Current chain object, tracked across segments so that empty segments
  // know where they sit.
  Atom cur;
  if (total == 0) {
    cur = key.at(0);
  } else {
    for (const auto& phi : phis) {
      if (phi.frame.arity() > 0) {
        cur = phi.frame.src_path.front().position(key.front()).first;
        break;
      }
    }
  }

  std::vector<InnerOutput> outputs;
  std::size_t idx = 0, slot = 0;
  for (const auto& phi : phis) {
    const std::size_t ni = phi.frame.arity();
    Key seg;
    if (ni == 0) {
      seg = {cur};
    } else {
      seg.assign(key.begin() + idx, key.begin() + idx + ni);
      idx += ni;
      cur = phi.frame.src_path.back().position(seg.back()).second;
    }
    if (phi.frame.unary_target()) {
      outputs.push_back({true, phi.at(seg), slot++, nullptr});
    } else {
      outputs.push_back({false, phi.at(seg), 0, &phi.frame.target_cat()});
    }
  }

  AbsorbedKey out;
  std::optional<Atom> pending;
  const FinCategory* pending_cat = nullptr;
  std::size_t last_slot = 0;
  for (const auto& o : outputs) {
    if (o.is_elem) {
      Atom e = o.value;
      if (pending) {
        e = outer[o.slot]->left(*pending, e);
        pending.reset();
      }
      out.key.push_back(e);
      last_slot = o.slot;
    } else {
      pending = pending ? o.seam->compose(o.value, *pending) : o.value;
      pending_cat = o.seam;
    }
  }
  if (pending) {
    if (!out.key.empty()) {
      out.key.back() = outer[last_slot]->right(out.key.back(), *pending);
    } else {
      out.morphism_only = true;
      out.mor = *pending;
      out.seam = pending_cat;
    }
  }
  return out;
}

}  // namespace

Cell vertical_compose(const Cell& psi, const std::vector<Cell>& phis) {
  const std::size_t m = psi.frame.arity();
  if (phis.empty()) {
    if (m != 0) throw std::invalid_argument("vertical_compose: no cells fill the source slots");
    return psi;
  }

  // Seam categories C_0..C_m of the outer source path.
  std::vector<const FinCategory*> seams;
  seams.push_back(&psi.frame.start_cat());
  for (std::size_t j = 0; j + 1 < m; ++j) seams.push_back(&psi.frame.src_path[j + 1].source);
  if (m > 0) seams.push_back(&psi.frame.end_cat());

  std::size_t slot = 0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const Cell& phi = phis[i];
    if (phi.frame.unary_target()) {
      if (slot >= m || !(phi.frame.target_prof() == psi.frame.src_path[slot])) {
        throw std::invalid_argument("vertical_compose: cell " + std::to_string(i + 1) +
                                    " does not match the outer source slot");
      }
      ++slot;
    } else if (!(phi.frame.target_cat() == *seams[slot])) {
      throw std::invalid_argument("vertical_compose: cell " + std::to_string(i + 1) +
                                  " does not land in the seam category");
    }
    if (i + 1 < phis.size() && !(phis[i + 1].frame.left == phi.frame.right)) {
      throw std::invalid_argument("vertical_compose: verticals of cells " + std::to_string(i + 1) +
                                  " and " + std::to_string(i + 2) + " do not chain");
    }
  }
  if (slot != m) {
    throw std::invalid_argument("vertical_compose: cells fill " + std::to_string(slot) + " of " +
                                std::to_string(m) + " source slots");
  }

  Cell out;
  out.frame.src_path.clear();
  for (const auto& phi : phis) {
    out.frame.src_path.insert(out.frame.src_path.end(), phi.frame.src_path.begin(),
                              phi.frame.src_path.end());
  }
  out.frame.left = compose_functors(psi.frame.left, phis.front().frame.left);
  out.frame.right = compose_functors(psi.frame.right, phis.back().frame.right);
  out.frame.target = psi.frame.target;

  for (const auto& key : frame_keys(out.frame)) {
    const AbsorbedKey a = absorb_through(phis, key);
    Atom value;
    if (!a.morphism_only) {
      value = psi.at(a.key);
    } else {
      // All inner cells produced morphisms; push the composite through the
      // outer cell's component at the morphism's codomain.
      const Atom z = a.seam->cod(a.mor);
      const Atom& base = psi.at({z});
      value = psi.frame.unary_target()
                  ? psi.frame.target_prof().left(psi.frame.left.mor(a.mor), base)
                  : psi.frame.target_cat().compose(base, psi.frame.left.mor(a.mor));
    }
    out.components[key] = value;
  }
  return out;
}

Cell horizontal_compose(const Cell& phi, const Cell& psi) {
  if (!(phi.frame.right == psi.frame.left)) {
    throw std::invalid_argument("horizontal_compose: middle verticals differ");
  }
  if (phi.frame.unary_target() && psi.frame.unary_target()) {
    throw std::invalid_argument("horizontal_compose: at most one factor may have a unary target");
  }
  if (phi.frame.unary_target()) {
    const Profunctor& k = phi.frame.target_prof();
    if (!(psi.frame.target_cat() == k.target)) {
      throw std::invalid_argument("horizontal_compose: nullary factor lands in the wrong category");
    }
    return vertical_compose(identity_cell(k), {phi, psi});
  }
  if (psi.frame.unary_target()) {
    const Profunctor& l = psi.frame.target_prof();
    if (!(phi.frame.target_cat() == l.source)) {
      throw std::invalid_argument("horizontal_compose: nullary factor lands in the wrong category");
    }
    return vertical_compose(identity_cell(l), {phi, psi});
  }
  if (!(phi.frame.target_cat() == psi.frame.target_cat())) {
    throw std::invalid_argument("horizontal_compose: nullary targets differ");
  }
  return vertical_compose(identity_vertical_cell(identity_functor(phi.frame.target_cat())),
                          {phi, psi});
}

// ---------------------------------------------------------------------------
// Cell enumeration
// ---------------------------------------------------------------------------

namespace {

/// Axiom instance between two keys, checked once both are assigned.
struct Constraint {
  std::size_t ka, kb;
  std::function<bool(const Atom& va, const Atom& vb)> ok;
};

}  // namespace

std::vector<Cell> enumerate_cells_where(const CellFrame& frame, const DomainFn& domain,
                                        std::size_t limit) {
  {
    const auto errors = validate_frame(frame);
    if (!errors.empty()) {
      throw std::invalid_argument("enumerate_cells: invalid frame: " + errors.front());
    }
  }
  const std::size_t n = frame.arity();
  const FinFunctor& f = frame.left;
  const FinFunctor& g = frame.right;

  const std::vector<Key> keys = frame_keys(frame);
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;

  // Per-key value domains, in canonical fiber order.
  std::vector<std::vector<Atom>> domains(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto [x0, xn] = key_ends(frame, keys[i]);
    const FinSet& full = frame.unary_target()
                             ? frame.target_prof().at(f.ob(x0), g.ob(xn))
                             : frame.target_cat().hom_set(f.ob(x0), g.ob(xn));
    if (!domain) {
      domains[i] = full.elems;
      continue;
    }
    const std::vector<Atom> allowed = domain(keys[i], full);
    const std::set<Atom> allowed_set(allowed.begin(), allowed.end());
    for (const auto& v : full.elems) {
      if (allowed_set.count(v)) domains[i].push_back(v);
    }
  }

  // Axiom instances, attached to the later of the two keys they mention.
  std::vector<std::vector<Constraint>> checks(keys.size() + 1);
  auto attach = [&](Constraint c) { checks[std::max(c.ka, c.kb)].push_back(std::move(c)); };

  if (n == 0) {
    const FinCategory& a0 = frame.start_cat();
    for (const auto& a : a0.morphisms()) {
      if (a == a0.id(a0.dom(a))) continue;
      const std::size_t ka = index.at({a0.dom(a)});
      const std::size_t kb = index.at({a0.cod(a)});
      const Atom fa = f.mor(a), ga = g.mor(a);
      if (frame.unary_target()) {
        const Profunctor& k = frame.target_prof();
        attach({ka, kb,
                [&k, fa, ga](const Atom& va, const Atom& vb) {
                  return k.left(fa, vb) == k.right(va, ga);
                }});
      } else {
        const FinCategory& c = frame.target_cat();
        attach({ka, kb,
                [&c, fa, ga](const Atom& va, const Atom& vb) {
                  return c.compose(vb, fa) == c.compose(ga, va);
                }});
      }
    }
  } else {
    const FinCategory& a0 = frame.start_cat();
    const FinCategory& an = frame.end_cat();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const Key& key = keys[i];
      const Atom x0 = frame.src_path.front().position(key.front()).first;
      const Atom xn = frame.src_path.back().position(key.back()).second;
      for (const auto& a : a0.morphisms()) {
        if (a0.cod(a) != x0 || a == a0.id(x0)) continue;
        Key moved = key;
        moved.front() = frame.src_path.front().left(a, key.front());
        const std::size_t j = index.at(moved);
        const Atom fa = f.mor(a);
        if (frame.unary_target()) {
          const Profunctor& k = frame.target_prof();
          attach({i, j,
                  [&k, fa](const Atom& va, const Atom& vb) { return vb == k.left(fa, va); }});
        } else {
          const FinCategory& c = frame.target_cat();
          attach({i, j,
                  [&c, fa](const Atom& va, const Atom& vb) { return vb == c.compose(va, fa); }});
        }
      }
      for (const auto& b : an.morphisms()) {
        if (an.dom(b) != xn || b == an.id(xn)) continue;
        Key moved = key;
        moved.back() = frame.src_path.back().right(key.back(), b);
        const std::size_t j = index.at(moved);
        const Atom gb = g.mor(b);
        if (frame.unary_target()) {
          const Profunctor& k = frame.target_prof();
          attach({i, j,
                  [&k, gb](const Atom& va, const Atom& vb) { return vb == k.right(va, gb); }});
        } else {
          const FinCategory& c = frame.target_cat();
          attach({i, j,
                  [&c, gb](const Atom& va, const Atom& vb) { return vb == c.compose(gb, va); }});
        }
      }
    }
    for_each_seam_identification(frame.src_path, [&](const Key& lhs, const Key& rhs) {
      attach({index.at(lhs), index.at(rhs),
              [](const Atom& va, const Atom& vb) { return va == vb; }});
    });
  }

  std::vector<Cell> out;
  std::vector<std::optional<Atom>> vals(keys.size());
  EnumGuard guard("enumerate_cells over " + std::to_string(keys.size()) + " keys");

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    guard.tick();
    if (i == keys.size()) {
      Cell cell;
      cell.frame = frame;
      for (std::size_t k = 0; k < keys.size(); ++k) cell.components[keys[k]] = *vals[k];
      out.push_back(std::move(cell));
      return limit > 0 && out.size() >= limit;
    }
    for (const auto& v : domains[i]) {
      vals[i] = v;
      bool good = true;
      for (const auto& c : checks[i]) {
        if (!c.ok(*vals[c.ka], *vals[c.kb])) {
          good = false;
          break;
        }
      }
      if (good && rec(i + 1)) return true;
    }
    vals[i].reset();
    return false;
  };
  rec(0);
  return out;
}

std::vector<Cell> enumerate_cells(const CellFrame& frame) {
  return enumerate_cells_where(frame, nullptr, 0);
}

}  // namespace hvdc
