#include "gottlieb/linalg.hpp"

#include <utility>

#include "gottlieb/error.hpp"

namespace gottlieb {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  RatMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector RatMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector RatMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RatMatrix::is_zero() const { return gottlieb::is_zero(data_); }

Vector RatMatrix::operator*(const Vector& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorKind::InternalInvariant, "matrix-vector size mismatch");
  }
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(x[c]) != 0) y[r] += a * x[c];
    }
  }
  return y;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(ErrorKind::InternalInvariant, "matrix-matrix size mismatch");
  }
  RatMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const auto& b = rhs(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

RrefResult rref(RatMatrix m) {
  RrefResult result;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = pivot_row;
    while (found < m.rows() && sgn(m(found, col)) == 0) ++found;
    if (found == m.rows()) continue;
    if (found != pivot_row) {
      for (std::size_t c = col; c < m.cols(); ++c) swap(m(found, c), m(pivot_row, c));
    }
    const Rational inv = 1 / m(pivot_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (sgn(m(pivot_row, c)) != 0) m(r, c) -= factor * m(pivot_row, c);
      }
    }
    result.pivots.push_back(col);
    ++pivot_row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

Subspace::Subspace(std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), basis_matrix_(ambient_dim, 0) {}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) {
      throw Error(ErrorKind::InternalInvariant, "vector length differs from ambient dimension");
    }
  }
  Subspace s(ambient_dim);
  // Pivot columns of the column matrix pick the first independent vectors.
  for (auto p : rref(RatMatrix::from_columns(ambient_dim, vectors)).pivots) {
    s.basis_.push_back(vectors[p]);
  }
  s.basis_matrix_ = RatMatrix::from_columns(ambient_dim, s.basis_);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<Vector> unit;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vector e(ambient_dim);
    e[i] = 1;
    unit.push_back(std::move(e));
  }
  return span(ambient_dim, unit);
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) return false;
  for (const auto& v : other.basis_) {
    if (!contains(v)) return false;
  }
  return true;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_dim_) {
    throw Error(ErrorKind::InternalInvariant, "vector length differs from ambient dimension");
  }
  if (basis_.empty()) {
    if (gottlieb::is_zero(v)) return Vector{};
    return std::nullopt;
  }
  return solve(basis_matrix_, v);
}

Subspace kernel_basis(const RatMatrix& m) {
  const auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced(i, free);
    basis.push_back(std::move(v));
  }
  // Free-column vectors are independent by construction.
  return Subspace::span(m.cols(), basis);
}

Subspace image_basis(const RatMatrix& m) {
  const auto [reduced, pivots] = rref(m.transpose());
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) basis.push_back(reduced.row(i));
  return Subspace::span(m.rows(), basis);
}

std::size_t quotient_dim(const Subspace& big, const Subspace& small) {
  if (!big.contains(small)) {
    throw Error(ErrorKind::NotASubspace, "subspace is not contained in the ambient subspace");
  }
  return big.dim() - small.dim();
}

std::vector<Vector> quotient_representatives(const Subspace& big, const Subspace& small) {
  quotient_dim(big, small);
  std::vector<Vector> stack = small.basis();
  stack.insert(stack.end(), big.basis().begin(), big.basis().end());
  std::vector<Vector> reps;
  for (auto p : rref(RatMatrix::from_columns(big.ambient_dim(), stack)).pivots) {
    if (p >= small.dim()) reps.push_back(stack[p]);
  }
  return reps;
}

std::optional<Vector> solve(const RatMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) {
    throw Error(ErrorKind::InternalInvariant, "right-hand side length differs from row count");
  }
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto [reduced, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = reduced(i, m.cols());
  return x;
}

}  // namespace gottlieb
