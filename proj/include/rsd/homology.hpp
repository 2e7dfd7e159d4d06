// First homology of surgered manifolds: cokernel of the framing/linking
// matrix, computed with an exact Smith normal form.

#pragma once

#include "rsd/core.hpp"

#include <gmpxx.h>

namespace rsd {

using BigInt = mpz_class;

class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntegerMatrix operator*(const IntegerMatrix &a, const IntegerMatrix &b);
  friend bool operator==(const IntegerMatrix &a, const IntegerMatrix &b);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

std::string to_string(const IntegerMatrix &m);

/// Finitely generated abelian group Z^free_rank + sum Z/torsion[i], with
/// torsion[i] | torsion[i+1] and every factor >= 2.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianGroup &a, const AbelianGroup &b);
};

/// "0", "Z", "Z^2 + Z/2 + Z/4", ...
std::string to_string(const AbelianGroup &g);

enum class PivotPolicy {
  /// Smallest nonzero absolute value, ties by row-major position.
  SmallestAbs,
  /// First nonzero entry in row-major order.
  FirstNonzero,
};

struct SmithDecomposition {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;
};

/// u * m * v == d with u, v unimodular and d diagonal, each diagonal entry
/// non-negative and dividing the next.
SmithDecomposition smith_normal_form(const IntegerMatrix &m,
                                     PivotPolicy policy = PivotPolicy::SmallestAbs);

AbelianGroup cokernel(const IntegerMatrix &m);

/// Framings on the diagonal, linking numbers off it, in component order.
IntegerMatrix presentation_matrix(const DehnDiagram &d);

AbelianGroup first_homology(const DehnDiagram &d);
AbelianGroup first_homology_round(const RoundDiagram &r);

} // namespace rsd
