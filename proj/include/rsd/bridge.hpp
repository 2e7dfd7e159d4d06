// Conversions between joint-pair round diagrams, integral Dehn diagrams and
// Kirby diagrams with a single 1-handle.

#pragma once

#include "rsd/core.hpp"

#include <span>

namespace rsd {

struct TwoHandle {
  FramedComponent attaching;
  Integer framing = 0;
  /// Signed number of passes over each 1-handle.
  std::vector<std::pair<HandleId, Integer>> runs_over;

  friend bool operator==(const TwoHandle &, const TwoHandle &) = default;
};

struct KirbyDiagram {
  std::vector<HandleId> one_handles;
  std::vector<TwoHandle> two_handles;
  /// Over 2-handle attaching circles.
  LinkingMatrix lk;

  friend bool operator==(const KirbyDiagram &, const KirbyDiagram &) = default;
};

std::vector<Violation> validate_diagram(const KirbyDiagram &k);

/// Dehn framing n1 - n2 + m on c1 and m on c2, for every joint pair.
DehnDiagram joint_pair_to_dehn(const RoundDiagram &r);

/// Clubs consecutive components into joint pairs. An odd component count
/// is first padded with an unlinked unknot of framing pad_sign.
RoundDiagram dehn_to_joint_pairs(const DehnDiagram &d, std::span<const Integer> k_choices,
                                 int pad_sign = 1);

/// Number of joint pairs dehn_to_joint_pairs produces for d.
std::size_t joint_pair_count(const DehnDiagram &d);

KirbyDiagram round1_to_kirby(const RoundDiagram &r);
RoundDiagram kirby_to_round1(const KirbyDiagram &k);

} // namespace rsd
