// Kirby moves on Dehn diagrams, equivalence moves on joint-pair round
// diagrams, and a bounded breadth-first search over the latter.

#pragma once

#include "rsd/core.hpp"

#include <span>
#include <string_view>

namespace rsd {

enum class MoveKind {
  Kirby1Add,
  Kirby1Del,
  Kirby2Slide,
  EqMove1,
  ShuffleA,
  ShuffleB,
  EqMove3Add,
  EqMove3Del,
  EqMove4,
};

/// Which component slides over which. The first digit pair names the slid
/// component, the second the one it slides over; "1x" is pair i and "2x"
/// pair j.
enum class Eq4Variant {
  V11over12,
  V12over11,
  V11over21,
  V11over22,
  V12over21,
  V12over22,
};

inline constexpr Eq4Variant kEq4Variants[] = {Eq4Variant::V11over12, Eq4Variant::V12over11,
                                              Eq4Variant::V11over21, Eq4Variant::V11over22,
                                              Eq4Variant::V12over21, Eq4Variant::V12over22};

bool is_two_pair(Eq4Variant v) noexcept;
std::string_view to_string(Eq4Variant v) noexcept;
std::optional<Eq4Variant> parse_eq4_variant(std::string_view s) noexcept;

std::string_view to_string(MoveKind k) noexcept;
std::optional<MoveKind> parse_move_kind(std::string_view s) noexcept;

/// One move with its arguments. Fields not used by a kind stay at their
/// defaults so that descriptors compare (and order) meaningfully.
struct MoveDescriptor {
  MoveKind kind = MoveKind::EqMove1;
  std::optional<Eq4Variant> variant;
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<ComponentId> components;
  Integer k = 0;
  Integer k1 = 0;
  Integer k2 = 0;
  Integer delta = 0;
  int sign = 1;

  friend auto operator<=>(const MoveDescriptor &, const MoveDescriptor &) = default;
  friend bool operator==(const MoveDescriptor &, const MoveDescriptor &) = default;
};

using MoveSequence = std::vector<MoveDescriptor>;

/// Script form, e.g. "eq4 variant=11over21 i=0 j=1 k=3".
std::string to_string(const MoveDescriptor &m);
/// Parses a script line; throws DiagramError with a readable message.
MoveDescriptor parse_move(std::string_view line);

// Kirby moves -----------------------------------------------------------------

DehnDiagram kirby1_add(const DehnDiagram &d, int sign);
DehnDiagram kirby1_del(const DehnDiagram &d, const ComponentId &c);
/// Slides a over b along b's framing curve.
DehnDiagram kirby2_slide(const DehnDiagram &d, const ComponentId &a, const ComponentId &b);

// Equivalence moves -------------------------------------------------------------

RoundDiagram eq_move1(const RoundDiagram &r, std::size_t pair, Integer k);
RoundDiagram shuffle_a(const RoundDiagram &r, std::size_t pair, Integer k);
RoundDiagram shuffle_b(const RoundDiagram &r, std::size_t i, std::size_t j, Integer k1, Integer k2);
/// Appends an unlinked pair of unknots with coefficients (k + delta, k) and
/// round 2-surgery coefficient sign. delta must be 0 or -2*sign.
RoundDiagram eq_move3_add(const RoundDiagram &r, Integer k, Integer delta, int sign);
RoundDiagram eq_move3_del(const RoundDiagram &r, std::size_t pair);
bool eq_move3_deletable(const RoundDiagram &r, std::size_t pair);
RoundDiagram eq_move4(const RoundDiagram &r, Eq4Variant variant, std::size_t i, std::size_t j,
                      Integer k);
RoundDiagram normalize_k(const RoundDiagram &r, std::span<const Integer> ks);

/// Ids the next eq_move3_add on r will create.
std::pair<ComponentId, ComponentId> eq_move3_ids(const RoundDiagram &r);

RoundDiagram apply_move(const RoundDiagram &r, const MoveDescriptor &m);
DehnDiagram apply_move(const DehnDiagram &d, const MoveDescriptor &m);
RoundDiagram apply_sequence(RoundDiagram r, const MoveSequence &seq);

// Search ------------------------------------------------------------------------

struct IntRange {
  Integer lo = 0;
  Integer hi = 0;
};

/// Breadth-first search over equivalence moves 1-4 with free integer
/// parameters drawn from k_range. Returns the lexicographically least
/// shortest sequence turning r1 into a diagram structurally equal to r2.
std::optional<MoveSequence> bounded_equivalence_search(const RoundDiagram &r1,
                                                       const RoundDiagram &r2, std::size_t depth,
                                                       IntRange k_range);

/// Structural equality used by the search: equal canonical forms.
bool structurally_equal(const RoundDiagram &a, const RoundDiagram &b);

} // namespace rsd
