#include "rsd/analysis.hpp"

#include <numeric>

namespace rsd {

bool is_trivial(const RoundDiagram &r) {
  bool trivial = true;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto &p = r.pairs[i];
    if (!p.m)
      throw DiagramError("pair " + std::to_string(i) + " has no round 2-surgery coefficient");
    trivial = trivial && p.m->is_infinite();
  }
  return trivial;
}

namespace {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace

std::vector<SplitBlock> split_connected_sum(const RoundDiagram &r) {
  auto ids = r.component_ids();
  std::map<ComponentId, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    index.emplace(ids[i], i);

  DisjointSets sets(ids.size());
  for (std::size_t i = 0; i < r.pairs.size(); ++i)
    sets.unite(2 * i, 2 * i + 1);
  for (const auto &[key, v] : r.lk.entries()) {
    auto a = index.find(key.first), b = index.find(key.second);
    if (v != 0 && a != index.end() && b != index.end())
      sets.unite(a->second, b->second);
  }

  // roots are the smallest member, so blocks come out in first-component order
  std::map<std::size_t, std::size_t> block_of_root;
  std::vector<SplitBlock> blocks;
  std::vector<std::set<ComponentId>> members;
  auto block_for = [&](std::size_t component) -> std::size_t {
    auto root = sets.find(component);
    auto [it, inserted] = block_of_root.emplace(root, blocks.size());
    if (inserted) {
      blocks.emplace_back();
      members.emplace_back();
    }
    members[it->second].insert(ids[component]);
    return it->second;
  };
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    auto b = block_for(2 * i);
    members[b].insert(ids[2 * i + 1]);
    blocks[b].diagram.pairs.push_back(r.pairs[i]);
  }
  for (std::size_t i = 0; i < r.loose.size(); ++i) {
    auto b = block_for(2 * r.pairs.size() + i);
    blocks[b].diagram.loose.push_back(r.loose[i]);
    blocks[b].disconnected = true;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b)
    blocks[b].diagram.lk = r.lk.restricted_to(members[b]);
  return blocks;
}

RoundDiagram merge_blocks(std::span<const SplitBlock> blocks) {
  RoundDiagram out;
  for (const auto &b : blocks) {
    out.pairs.insert(out.pairs.end(), b.diagram.pairs.begin(), b.diagram.pairs.end());
    out.loose.insert(out.loose.end(), b.diagram.loose.begin(), b.diagram.loose.end());
    for (const auto &[key, v] : b.diagram.lk.entries())
      out.lk.set_directed(key.first, key.second, v);
  }
  return out;
}

FoliationWitness suture_slope(const RoundDiagram &r, std::size_t pair) {
  if (pair >= r.pairs.size())
    throw DiagramError("pair index " + std::to_string(pair) + " out of range");
  const auto &p = r.pairs[pair];
  if (p.n1 != p.n2)
    throw DiagramError("pair " + std::to_string(pair) + " has round 1-surgery coefficients " +
                       std::to_string(p.n1) + " and " + std::to_string(p.n2) +
                       "; the suture slope needs equal coefficients");
  return {pair, detail::checked_sub(r.lk.get(p.c1.id, p.c2.id), p.n1), p.n1};
}

FoliationFamily taut_foliation_family(const RoundDiagram &r, std::size_t pair, IntRange n_range) {
  if (pair >= r.pairs.size())
    return Refusal{"no pair " + std::to_string(pair)};
  const auto &p = r.pairs[pair];
  if (!p.c1.fibred || !p.c2.fibred)
    return Refusal{"not fibred"};
  if (p.n1 != p.n2)
    return Refusal{"coefficients differ"};
  // every n in the range gives the same manifold with its own foliation
  Integer lk = r.lk.get(p.c1.id, p.c2.id);
  std::vector<FoliationWitness> out;
  for (Integer n = n_range.lo; n <= n_range.hi; ++n) {
    out.push_back({pair, detail::checked_sub(lk, n), n});
    if (n == n_range.hi)
      break;
  }
  return out;
}

bool tight_contact_exists(const RoundDiagram &r, std::size_t pair) {
  if (pair >= r.pairs.size())
    return false;
  Integer n = r.pairs[pair].n1;
  auto family = taut_foliation_family(r, pair, {n, n});
  const auto *witnesses = std::get_if<std::vector<FoliationWitness>>(&family);
  return witnesses && !witnesses->empty();
}

} // namespace rsd
