#include "rsd/moves.hpp"
#include "rsd/textio.hpp"

#include <algorithm>
#include <unordered_set>

namespace rsd {

namespace {

/// Everything about one component except its linking numbers.
struct ComponentSignature {
  int role = 0; // 1 or 2 inside a pair, 0 for a loose knot
  ComponentId partner;
  Integer n = 0;
  std::optional<Rational> m;
  FramedComponent component;

  friend bool operator==(const ComponentSignature &, const ComponentSignature &) = default;
};

using Signature = std::map<ComponentId, ComponentSignature>;

Signature signature_of(const RoundDiagram &r) {
  Signature s;
  for (const auto &p : r.pairs) {
    s.emplace(p.c1.id, ComponentSignature{1, p.c2.id, p.n1, std::nullopt, p.c1});
    s.emplace(p.c2.id, ComponentSignature{2, p.c1.id, p.n2, p.m, p.c2});
  }
  for (const auto &k : r.loose)
    s.emplace(k.component.id, ComponentSignature{0, {}, 0, k.m, k.component});
  return s;
}

/// How a state differs from the target; used to discard last-step moves
/// that cannot touch every differing component.
struct Difference {
  std::set<ComponentId> ids;
  bool lk_equal = true;
};

Difference difference(const RoundDiagram &state, const Signature &target_sig,
                      const LinkingMatrix &target_lk) {
  Difference d;
  Signature sig = signature_of(state);
  for (const auto &[id, s] : sig) {
    auto it = target_sig.find(id);
    if (it == target_sig.end() || !(it->second == s))
      d.ids.insert(id);
  }
  for (const auto &[id, s] : target_sig)
    if (!sig.contains(id))
      d.ids.insert(id);
  d.lk_equal = state.lk == target_lk;
  return d;
}

bool integral_joint(const JointPair &p) { return p.m && p.m->is_integer(); }

bool within(const std::set<ComponentId> &ids, std::initializer_list<const JointPair *> pairs) {
  return std::all_of(ids.begin(), ids.end(), [&](const ComponentId &id) {
    return std::any_of(pairs.begin(), pairs.end(),
                       [&](const JointPair *p) { return p->c1.id == id || p->c2.id == id; });
  });
}

void candidate_moves(const RoundDiagram &r, IntRange ks, const Difference *last,
                     std::vector<MoveDescriptor> &out) {
  out.clear();
  const std::size_t n = r.pairs.size();
  auto keep = [&](std::initializer_list<const JointPair *> touched, bool needs_lk_equal) {
    if (!last)
      return true;
    if (needs_lk_equal && !last->lk_equal)
      return false;
    return !last->ids.empty() && within(last->ids, touched);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto &p = r.pairs[i];
    if (!integral_joint(p) || !keep({&p}, true))
      continue;
    for (Integer k = ks.lo; k <= ks.hi; ++k) {
      MoveDescriptor m;
      m.kind = MoveKind::EqMove1;
      m.i = i;
      m.k = k;
      out.push_back(m);
      m.kind = MoveKind::ShuffleA;
      out.push_back(m);
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !integral_joint(r.pairs[i]) || !integral_joint(r.pairs[j]) ||
          !keep({&r.pairs[i], &r.pairs[j]}, true))
        continue;
      for (Integer k1 = ks.lo; k1 <= ks.hi; ++k1)
        for (Integer k2 = ks.lo; k2 <= ks.hi; ++k2) {
          MoveDescriptor m;
          m.kind = MoveKind::ShuffleB;
          m.i = i;
          m.j = j;
          m.k1 = k1;
          m.k2 = k2;
          out.push_back(m);
        }
    }

  bool add_ok = true;
  if (last) {
    auto [u1, u2] = eq_move3_ids(r);
    add_ok = last->lk_equal && last->ids == std::set<ComponentId>{u1, u2};
  }
  if (add_ok)
    for (int sign : {-1, 1})
      for (Integer delta : {Integer{0}, Integer{-2 * sign}})
        for (Integer k = ks.lo; k <= ks.hi; ++k) {
          MoveDescriptor m;
          m.kind = MoveKind::EqMove3Add;
          m.k = k;
          m.delta = delta;
          m.sign = sign;
          out.push_back(m);
        }

  for (std::size_t i = 0; i < n; ++i)
    if (eq_move3_deletable(r, i) && keep({&r.pairs[i]}, true)) {
      MoveDescriptor m;
      m.kind = MoveKind::EqMove3Del;
      m.i = i;
      out.push_back(m);
    }

  for (auto v : kEq4Variants)
    for (std::size_t i = 0; i < n; ++i) {
      if (!integral_joint(r.pairs[i]) || !keep({&r.pairs[i]}, false))
        continue;
      for (std::size_t j = 0; j < (is_two_pair(v) ? n : 1); ++j) {
        if (is_two_pair(v) && (j == i || !integral_joint(r.pairs[j])))
          continue;
        for (Integer k = ks.lo; k <= ks.hi; ++k) {
          MoveDescriptor m;
          m.kind = MoveKind::EqMove4;
          m.variant = v;
          m.i = i;
          m.j = j;
          m.k = k;
          out.push_back(m);
        }
      }
    }

  std::sort(out.begin(), out.end());
}

std::string state_key(const RoundDiagram &r) { return print(canonicalize(r)); }

} // namespace

std::optional<MoveSequence> bounded_equivalence_search(const RoundDiagram &r1,
                                                       const RoundDiagram &r2, std::size_t depth,
                                                       IntRange k_range) {
  for (const auto *d : {&r1, &r2})
    if (auto v = validate_diagram(*d); !v.empty())
      throw DiagramError("search input is not a valid diagram: " + v.front().message);
  if (k_range.lo > k_range.hi)
    throw DiagramError("empty k range");

  if (structurally_equal(r1, r2))
    return MoveSequence{};

  const RoundDiagram target = canonicalize(r2);
  const Signature target_sig = signature_of(target);

  struct Node {
    RoundDiagram state;
    MoveSequence path;
  };
  std::vector<Node> frontier{{r1, {}}};
  std::unordered_set<std::string> visited{state_key(r1)};
  std::vector<MoveDescriptor> moves;

  // Parents are expanded in lexicographic order of their paths and moves in
  // descriptor order, so the first hit is the least shortest sequence.
  for (std::size_t level = 1; level <= depth; ++level) {
    const bool last = level == depth;
    std::vector<Node> next;
    for (const auto &node : frontier) {
      std::optional<Difference> diff;
      if (last)
        diff = difference(node.state, target_sig, target.lk);
      candidate_moves(node.state, k_range, diff ? &*diff : nullptr, moves);
      for (const auto &m : moves) {
        RoundDiagram child;
        try {
          child = apply_move(node.state, m);
        } catch (const DiagramError &) {
          continue;
        }
        if (canonicalize(child) == target) {
          MoveSequence path = node.path;
          path.push_back(m);
          return path;
        }
        if (last || !visited.insert(state_key(child)).second)
          continue;
        MoveSequence path = node.path;
        path.push_back(m);
        next.push_back({std::move(child), std::move(path)});
      }
    }
    frontier = std::move(next);
    if (frontier.empty())
      break;
  }
  return std::nullopt;
}

} // namespace rsd
