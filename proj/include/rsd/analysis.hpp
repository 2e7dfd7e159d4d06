// Diagram predicates and the slope arithmetic behind taut foliations on
// manifolds obtained by round 1-surgery on fibred two-component links.

#pragma once

#include "rsd/moves.hpp"

namespace rsd {

/// Suture slope lk(c1, c2) - n induced on the glued thickened torus.
struct FoliationWitness {
  std::size_t pair = 0;
  Integer slope = 0;
  Integer n = 0;

  friend bool operator==(const FoliationWitness &, const FoliationWitness &) = default;
};

struct Refusal {
  std::string reason;
};

using FoliationFamily = std::variant<std::vector<FoliationWitness>, Refusal>;

/// Every joint pair carries the infinity slope 1/0. Vacuously true without
/// pairs; throws on a pair without round 2-surgery coefficient.
bool is_trivial(const RoundDiagram &r);

struct SplitBlock {
  RoundDiagram diagram;
  /// The block contains a standalone round 2-surgery knot, so surgery on it
  /// gives a disconnected summand.
  bool disconnected = false;
};

/// Connected components of the graph joining pair partners and components
/// with nonzero linking number. Blocks appear in order of their first
/// component. Zero linking does not imply a split link, so this can only
/// under-approximate the geometric decomposition.
std::vector<SplitBlock> split_connected_sum(const RoundDiagram &r);

/// Inverse of split_connected_sum up to pair and loose-knot order.
RoundDiagram merge_blocks(std::span<const SplitBlock> blocks);

FoliationWitness suture_slope(const RoundDiagram &r, std::size_t pair);

/// One witness per n in n_range when both components of the pair are
/// fibred and carry the same round 1-surgery coefficient.
FoliationFamily taut_foliation_family(const RoundDiagram &r, std::size_t pair, IntRange n_range);

bool tight_contact_exists(const RoundDiagram &r, std::size_t pair);

} // namespace rsd
