#include "rsd/bridge.hpp"
#include "rsd/homology.hpp"
#include "rsd/moves.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace rsd;
using namespace rsd::test;

namespace {

void check_decomposition(const IntegerMatrix &m, PivotPolicy policy) {
  auto snf = smith_normal_form(m, policy);
  CHECK(snf.u * m * snf.v == snf.d);
  CHECK(is_unimodular(snf.u));
  CHECK(is_unimodular(snf.v));
  CHECK(is_diagonal(snf.d));
  CHECK(has_divisibility_chain(snf.d));
}

std::vector<BigInt> diagonal(const IntegerMatrix &d) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    out.push_back(d(i, i));
  return out;
}

} // namespace

TEST_CASE("smith normal form worked instances") {
  CHECK(smith_normal_form(IntegerMatrix{{2, 1}, {1, 1}}).d == IntegerMatrix::identity(2));
  CHECK(smith_normal_form(IntegerMatrix{{0}}).d == IntegerMatrix{{0}});
  CHECK(smith_normal_form(IntegerMatrix{{6, 4}, {4, 4}}).d == (IntegerMatrix{{2, 0}, {0, 4}}));
  CHECK(smith_normal_form(IntegerMatrix{{4, 0}, {0, 6}}).d == (IntegerMatrix{{2, 0}, {0, 12}}));
  CHECK(smith_normal_form(IntegerMatrix{{-3}}).d == IntegerMatrix{{3}});
  check_decomposition(IntegerMatrix{{0, 0, 0}, {0, 0, 0}}, PivotPolicy::SmallestAbs);
  check_decomposition(IntegerMatrix{{1, 2, 3}, {4, 5, 6}}, PivotPolicy::FirstNonzero);
  check_decomposition(IntegerMatrix{{2}, {4}, {6}}, PivotPolicy::SmallestAbs);
  check_decomposition(IntegerMatrix(0, 0), PivotPolicy::SmallestAbs);
}

TEST_CASE("smith normal form agrees with the determinantal-divisor oracle") {
  Rng rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 4));
    std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 4));
    auto m = random_matrix(rng, rows, cols, trial % 3 == 0 ? 2 : 20);
    auto d = diagonal(smith_normal_form(m).d);
    auto factors = invariant_factors_by_minors(m);
    factors.resize(d.size(), 0);
    CHECK(d == factors);
    CHECK(cokernel(m) == group_by_minors(m));
  }
}

TEST_CASE("smith normal form properties on larger matrices") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 8));
    std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 8));
    auto m = random_matrix(rng, rows, cols, 99);
    check_decomposition(m, PivotPolicy::SmallestAbs);
    check_decomposition(m, PivotPolicy::FirstNonzero);
    CHECK(smith_normal_form(m, PivotPolicy::SmallestAbs).d ==
          smith_normal_form(m, PivotPolicy::FirstNonzero).d);
  }
}

TEST_CASE("determinant equals the product of invariant factors at rank zero") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_dehn(rng, 5, 7);
    auto m = presentation_matrix(d);
    auto g = first_homology(d);
    BigInt det = determinant(m);
    if (det == 0) {
      CHECK(g.free_rank > 0);
      continue;
    }
    BigInt product = 1;
    for (const auto &t : g.torsion)
      product *= t;
    CHECK(g.free_rank == 0);
    CHECK(product == abs(det));
  }
}

TEST_CASE("abelian group printing") {
  CHECK(to_string(AbelianGroup{}) == "0");
  CHECK(to_string(AbelianGroup{1, {}}) == "Z");
  CHECK(to_string(AbelianGroup{2, {2, 4}}) == "Z^2 + Z/2 + Z/4");
  CHECK(to_string(AbelianGroup{0, {5}}) == "Z/5");
}

TEST_CASE("first homology of worked diagrams") {
  auto lens = first_homology(dehn_of({{"K", 5}}));
  CHECK(lens.free_rank == 0);
  CHECK(lens.torsion == std::vector<BigInt>{5});
  CHECK(first_homology(dehn_of({{"K", 0}})) == AbelianGroup{1, {}});
  CHECK(first_homology(dehn_of({{"K", 1}})).is_trivial());
  CHECK(first_homology(dehn_of({{"a", 0}, {"b", 0}}, {{"a", "b", 1}})).is_trivial());
  CHECK(group_by_minors(IntegerMatrix{{5}}) == lens);
  CHECK(first_homology(DehnDiagram{}).is_trivial());
}

TEST_CASE("first homology of round diagrams") {
  auto g = first_homology_round(round_of({joint("a", 3, "b", 1, 2)}));
  CHECK(g.free_rank == 0);
  CHECK(g.torsion == std::vector<BigInt>{2, 4});
  for (Integer n = -3; n <= 3; ++n)
    for (int s : {-1, 1})
      CHECK(first_homology_round(round_of({joint("a", n, "b", n, s)})).is_trivial());
  CHECK(first_homology_round(eq_move3_add(RoundDiagram{}, 4, 0, -1)).is_trivial());
  auto infinite = round_of({joint("a", 0, "b", 0, 1)});
  infinite.pairs[0].m = Rational::infinity();
  CHECK_THROWS_AS(first_homology_round(infinite), DiagramError);
}

TEST_CASE("first homology is invariant under permutation of components") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_dehn(rng, 5, 9);
    auto p = d;
    std::shuffle(p.components.begin(), p.components.end(), rng);
    CHECK(first_homology(p) == first_homology(d));
  }
}

TEST_CASE("big entries stay exact") {
  // intermediate values far beyond 64 bits
  IntegerMatrix m(3, 3);
  BigInt big("123456789012345678901234567890");
  m(0, 0) = big;
  m(0, 1) = big + 1;
  m(1, 1) = big * big;
  m(2, 2) = 6;
  m(1, 2) = 4;
  check_decomposition(m, PivotPolicy::SmallestAbs);
  CHECK(smith_normal_form(m).d == smith_normal_form(m, PivotPolicy::FirstNonzero).d);
}
