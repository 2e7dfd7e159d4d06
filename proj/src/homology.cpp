#include "rsd/homology.hpp"

#include "rsd/bridge.hpp"

#include <sstream>

namespace rsd {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_)
      throw std::invalid_argument("ragged matrix literal");
    for (long v : row)
      data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntegerMatrix operator*(const IntegerMatrix &a, const IntegerMatrix &b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix dimensions do not agree");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

bool operator==(const IntegerMatrix &a, const IntegerMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string to_string(const IntegerMatrix &m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? ", " : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const AbelianGroup &a, const AbelianGroup &b) {
  return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

std::string to_string(const AbelianGroup &g) {
  if (g.is_trivial())
    return "0";
  std::vector<std::string> parts;
  if (g.free_rank == 1)
    parts.emplace_back("Z");
  else if (g.free_rank > 1)
    parts.push_back("Z^" + std::to_string(g.free_rank));
  for (const auto &t : g.torsion)
    parts.push_back("Z/" + t.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? " + " : "") + parts[i];
  return out;
}

namespace {

class Reducer {
public:
  Reducer(const IntegerMatrix &m)
      : d_(m), u_(IntegerMatrix::identity(m.rows())), v_(IntegerMatrix::identity(m.cols())) {}

  SmithDecomposition run(PivotPolicy policy) {
    const std::size_t rows = d_.rows(), cols = d_.cols();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
      auto pivot = choose_pivot(t, policy);
      if (!pivot)
        break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      settle(t);
      if (sgn(d_(t, t)) < 0)
        negate_row(t);
    }
    return {std::move(d_), std::move(u_), std::move(v_)};
  }

private:
  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot(std::size_t t, PivotPolicy policy) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        if (sgn(d_(i, j)) == 0)
          continue;
        if (policy == PivotPolicy::FirstNonzero)
          return std::pair{i, j};
        if (!best || mpz_cmpabs(d_(i, j).get_mpz_t(), d_(best->first, best->second).get_mpz_t()) < 0)
          best = std::pair{i, j};
      }
    return best;
  }

  /// Clears row and column t and enforces divisibility of the remaining
  /// block by the pivot.
  void settle(std::size_t t) {
    const std::size_t rows = d_.rows(), cols = d_.cols();
    BigInt q;
    while (true) {
      bool clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(d_(i, t)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
        add_row_multiple(i, t, -q);
        if (sgn(d_(i, t)) != 0)
          clear = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(d_(t, j)) == 0)
          continue;
        mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
        add_col_multiple(j, t, -q);
        if (sgn(d_(t, j)) != 0)
          clear = false;
      }
      if (!clear) {
        // a remainder smaller than the pivot is left in row or column t
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(d_(i, t)) != 0 && mpz_cmpabs(d_(i, t).get_mpz_t(), d_(bi, bj).get_mpz_t()) < 0)
            bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(d_(t, j)) != 0 && mpz_cmpabs(d_(t, j).get_mpz_t(), d_(bi, bj).get_mpz_t()) < 0)
            bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) {
            add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible)
        return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < d_.cols(); ++j)
      swap(d_(a, j), d_(b, j));
    for (std::size_t j = 0; j < u_.cols(); ++j)
      swap(u_(a, j), u_(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < d_.rows(); ++i)
      swap(d_(i, a), d_(i, b));
    for (std::size_t i = 0; i < v_.rows(); ++i)
      swap(v_(i, a), v_(i, b));
  }

  /// row_target += factor * row_source
  void add_row_multiple(std::size_t target, std::size_t source, const BigInt &factor) {
    for (std::size_t j = 0; j < d_.cols(); ++j)
      d_(target, j) += factor * d_(source, j);
    for (std::size_t j = 0; j < u_.cols(); ++j)
      u_(target, j) += factor * u_(source, j);
  }

  void add_col_multiple(std::size_t target, std::size_t source, const BigInt &factor) {
    for (std::size_t i = 0; i < d_.rows(); ++i)
      d_(i, target) += factor * d_(i, source);
    for (std::size_t i = 0; i < v_.rows(); ++i)
      v_(i, target) += factor * v_(i, source);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d_.cols(); ++j)
      d_(r, j) = -d_(r, j);
    for (std::size_t j = 0; j < u_.cols(); ++j)
      u_(r, j) = -u_(r, j);
  }

  IntegerMatrix d_, u_, v_;
};

} // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix &m, PivotPolicy policy) {
  return Reducer(m).run(policy);
}

AbelianGroup cokernel(const IntegerMatrix &m) {
  auto snf = smith_normal_form(m);
  AbelianGroup g;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const auto &x = snf.d(i, i);
    if (sgn(x) == 0)
      continue;
    ++nonzero;
    if (x != 1)
      g.torsion.push_back(x);
  }
  g.free_rank = m.rows() - nonzero;
  return g;
}

IntegerMatrix presentation_matrix(const DehnDiagram &d) {
  const std::size_t n = d.components.size();
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto &a = d.components[i].id;
      const auto &b = d.components[j].id;
      Integer v = (i == j) ? d.framing_of(a) : d.lk.get(a, b);
      m(i, j) = static_cast<long>(v);
    }
  return m;
}

AbelianGroup first_homology(const DehnDiagram &d) { return cokernel(presentation_matrix(d)); }

AbelianGroup first_homology_round(const RoundDiagram &r) {
  return first_homology(joint_pair_to_dehn(r));
}

} // namespace rsd
