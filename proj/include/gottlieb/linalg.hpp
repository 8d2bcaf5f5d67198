#pragma once

// Exact dense linear algebra over the rationals.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gottlieb {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Formats a rational as "p/q" (the denominator is always written).
std::string to_fraction_string(const Rational& q);

bool is_zero(const Vector& v);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(std::size_t cols, const std::vector<Vector>& rows);
  static RatMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  RatMatrix transpose() const;
  bool is_zero() const;

  Vector operator*(const Vector& x) const;
  RatMatrix operator*(const RatMatrix& rhs) const;
  bool operator==(const RatMatrix& rhs) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

RrefResult rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);

/// A linear subspace of Q^ambient_dim given by an independent basis.
///
/// The basis is kept as supplied (after dropping dependent vectors); an
/// echelon copy is maintained for membership and coordinate queries.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0);

  /// Span of arbitrary vectors; dependent ones are dropped in order.
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v with respect to basis(), or nullopt if v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  std::size_t ambient_dim_;
  std::vector<Vector> basis_;
  RatMatrix basis_matrix_;  // columns are basis vectors
};

Subspace kernel_basis(const RatMatrix& m);
Subspace image_basis(const RatMatrix& m);

/// dim(big) - dim(small); throws NotASubspace unless small is inside big.
std::size_t quotient_dim(const Subspace& big, const Subspace& small);
/// Vectors of big's basis completing a basis of small to one of big.
std::vector<Vector> quotient_representatives(const Subspace& big, const Subspace& small);

std::optional<Vector> solve(const RatMatrix& m, const Vector& b);

}  // namespace gottlieb
