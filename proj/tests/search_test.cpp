#include "rsd/moves.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace rsd;
using namespace rsd::test;

TEST_CASE("search returns the empty sequence for equal diagrams") {
  auto r = round_of({joint("a", 3, "b", 1, 2)});
  auto found = bounded_equivalence_search(r, r, 2, {-1, 1});
  REQUIRE(found);
  CHECK(found->empty());

  auto reordered = round_of({joint("c", 0, "d", 0, 1), joint("a", 3, "b", 1, 2)});
  auto original = round_of({joint("a", 3, "b", 1, 2), joint("c", 0, "d", 0, 1)});
  auto same = bounded_equivalence_search(reordered, original, 0, {0, 0});
  REQUIRE(same);
  CHECK(same->empty());
}

TEST_CASE("search finds single moves") {
  auto r = round_of({joint("a", 3, "b", 1, 2)});
  auto target = eq_move1(r, 0, 5);
  auto found = bounded_equivalence_search(r, target, 1, {0, 5});
  REQUIRE(found);
  REQUIRE(found->size() == 1);
  CHECK(structurally_equal(apply_sequence(r, *found), target));
  CHECK(to_string(found->front()) == "eq1 pair=0 k=5");

  auto swapped = shuffle_a(r, 0, 0);
  auto again = bounded_equivalence_search(r, swapped, 1, {-2, 2});
  REQUIRE(again);
  REQUIRE(again->size() == 1);
  CHECK(structurally_equal(apply_sequence(r, *again), swapped));
}

TEST_CASE("search result is the least shortest sequence") {
  auto r = round_of({joint("a", 3, "b", 3, 2)});
  // (k, k, 2) is reached by eq1 with k; eq4 and shuffles cannot do it in one move
  auto target = eq_move1(r, 0, 1);
  auto found = bounded_equivalence_search(r, target, 2, {-2, 2});
  REQUIRE(found);
  CHECK(found->size() == 1);
  CHECK(found->front() == parse_move("eq1 pair=0 k=1"));
}

TEST_CASE("search reports exhaustion and rejects bad input") {
  auto r = round_of({joint("a", 3, "b", 1, 2)});
  auto other = round_of({joint("a", 3, "b", 1, 7)});
  CHECK_FALSE(bounded_equivalence_search(r, other, 1, {-1, 1}));
  CHECK_FALSE(bounded_equivalence_search(r, other, 0, {-1, 1}));
  CHECK_THROWS_AS(bounded_equivalence_search(r, other, 1, {1, 0}), DiagramError);
  auto broken = r;
  broken.pairs[0].m = Rational{2, 4};
  CHECK_THROWS_AS(bounded_equivalence_search(broken, r, 1, {0, 0}), DiagramError);
}

TEST_CASE("search recovers two-move scrambles") {
  Rng rng(404);
  int recovered = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto r = random_joint_diagram(rng, 1, 2, 3, 2);
    auto target = r;
    for (int step = 0; step < 2; ++step) {
      MoveDescriptor m;
      std::size_t n = target.pairs.size();
      m.i = static_cast<std::size_t>(uniform(rng, 0, Integer(n) - 1));
      m.k = uniform(rng, -2, 2);
      switch (uniform(rng, 0, 3)) {
      case 0: m.kind = MoveKind::EqMove1; break;
      case 1: m.kind = MoveKind::ShuffleA; break;
      case 2:
        m.kind = MoveKind::EqMove3Add;
        m.sign = uniform(rng, 0, 1) ? 1 : -1;
        m.delta = uniform(rng, 0, 1) ? 0 : -2 * m.sign;
        break;
      default:
        m.kind = MoveKind::EqMove4;
        m.variant = Eq4Variant::V11over12;
        break;
      }
      target = apply_move(target, m);
    }
    auto found = bounded_equivalence_search(r, target, 2, {-2, 2});
    REQUIRE(found);
    CHECK(found->size() <= 2);
    CHECK(structurally_equal(apply_sequence(r, *found), target));
    ++recovered;
  }
  CHECK(recovered == 25);
}
