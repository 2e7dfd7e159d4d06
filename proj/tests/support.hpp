// Builders, seeded generators and independent oracles shared by the tests.

#pragma once

#include "rsd/core.hpp"
#include "rsd/homology.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rsd::test {

inline FramedComponent comp(const std::string &id, const std::string &knot = "unknot",
                            bool fibred = false) {
  return {ComponentId{id}, KnotExpr::atom(knot), fibred};
}

inline ComponentId id(const std::string &s) { return ComponentId{s}; }

struct LkEntry {
  std::string a, b;
  Integer value;
};

inline JointPair joint(const std::string &a, Integer n1, const std::string &b, Integer n2, Integer m) {
  return {comp(a), n1, comp(b), n2, Rational::integer(m)};
}

inline RoundDiagram round_of(std::vector<JointPair> pairs, std::vector<LkEntry> lk = {}) {
  RoundDiagram r;
  r.pairs = std::move(pairs);
  for (const auto &e : lk)
    r.lk.set(id(e.a), id(e.b), e.value);
  return r;
}

inline DehnDiagram dehn_of(std::vector<std::pair<std::string, Integer>> framings,
                           std::vector<LkEntry> lk = {}) {
  DehnDiagram d;
  for (const auto &[name, f] : framings) {
    d.components.push_back(comp(name));
    d.framing[id(name)] = f;
  }
  for (const auto &e : lk)
    d.lk.set(id(e.a), id(e.b), e.value);
  return d;
}

// ---- generators -------------------------------------------------------------

using Rng = std::mt19937_64;

inline Integer uniform(Rng &rng, Integer lo, Integer hi) {
  return std::uniform_int_distribution<Integer>(lo, hi)(rng);
}

/// Joint pairs "a<i>"/"b<i>" with integral m; a fraction of linking entries
/// are left at zero so that split and unlinked cases occur.
inline RoundDiagram random_joint_diagram(Rng &rng, std::size_t min_pairs, std::size_t max_pairs,
                                         Integer bound, Integer lk_bound) {
  RoundDiagram r;
  std::size_t n = static_cast<std::size_t>(uniform(rng, Integer(min_pairs), Integer(max_pairs)));
  const char *knots[] = {"unknot", "unknot", "trefoil", "figure_eight"};
  for (std::size_t i = 0; i < n; ++i) {
    JointPair p;
    p.c1 = comp("a" + std::to_string(i), knots[uniform(rng, 0, 3)]);
    p.c2 = comp("b" + std::to_string(i), knots[uniform(rng, 0, 3)]);
    p.n1 = uniform(rng, -bound, bound);
    p.n2 = uniform(rng, -bound, bound);
    p.m = Rational::integer(uniform(rng, -bound, bound));
    r.pairs.push_back(p);
  }
  auto ids = r.component_ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (uniform(rng, 0, 2) != 0)
        r.lk.set(ids[i], ids[j], uniform(rng, -lk_bound, lk_bound));
  return r;
}

inline DehnDiagram random_dehn(Rng &rng, std::size_t max_components, Integer bound) {
  DehnDiagram d;
  std::size_t n = static_cast<std::size_t>(uniform(rng, 1, Integer(max_components)));
  for (std::size_t i = 0; i < n; ++i) {
    auto c = comp("L" + std::to_string(i));
    d.framing[c.id] = uniform(rng, -bound, bound);
    d.components.push_back(c);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d.lk.set(d.components[i].id, d.components[j].id, uniform(rng, -bound, bound));
  return d;
}

inline IntegerMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols, long bound) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = static_cast<long>(uniform(rng, -bound, bound));
  return m;
}

// ---- oracles ----------------------------------------------------------------------

/// Leibniz expansion over explicit row/column selections.
inline BigInt minor_det(const IntegerMatrix &m, const std::vector<std::size_t> &rows,
                        const std::vector<std::size_t> &cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        inversions += perm[i] > perm[j];
    BigInt term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      term *= m(rows[i], cols[perm[i]]);
    if (inversions % 2)
      total -= term;
    else
      total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>> &out) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i])
        s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

/// Invariant factors from determinantal divisors: s_k = D_k / D_{k-1} with
/// D_k the gcd of all k x k minors. Returns the nonzero factors.
inline std::vector<BigInt> invariant_factors_by_minors(const IntegerMatrix &m) {
  std::vector<BigInt> factors;
  BigInt previous = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    BigInt g = 0;
    for (const auto &r : rs)
      for (const auto &c : cs) {
        BigInt det = minor_det(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    if (g == 0)
      break;
    factors.push_back(g / previous);
    previous = g;
  }
  return factors;
}

/// Cokernel of a matrix computed from its minors alone.
inline AbelianGroup group_by_minors(const IntegerMatrix &m) {
  auto factors = invariant_factors_by_minors(m);
  AbelianGroup g;
  g.free_rank = m.rows() - factors.size();
  for (const auto &f : factors)
    if (f != 1)
      g.torsion.push_back(f);
  return g;
}

inline BigInt determinant(const IntegerMatrix &m) {
  std::vector<std::size_t> all(m.rows());
  std::iota(all.begin(), all.end(), 0);
  return minor_det(m, all, all);
}

inline bool is_diagonal(const IntegerMatrix &d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0)
        return false;
  return true;
}

inline bool has_divisibility_chain(const IntegerMatrix &d) {
  std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) < 0)
      return false;
    if (i + 1 < n) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0)
        return false;
      if (d(i, i) != 0 && !mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t()))
        return false;
    }
  }
  return true;
}

/// |det| == 1 by fraction-free elimination, independent of the SNF code.
inline bool is_unimodular(const IntegerMatrix &m) {
  if (m.rows() != m.cols())
    return false;
  const std::size_t n = m.rows();
  if (n == 0)
    return true;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0)
      ++p;
    if (p == n)
      return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j)
        swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  BigInt det = sign * a(n - 1, n - 1);
  return det == 1 || det == -1;
}

inline std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

} // namespace rsd::test
