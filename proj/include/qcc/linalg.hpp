#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qcc/qring.hpp"

namespace qcc {

using DVec = std::vector<QFrac>;
using DMat = std::vector<DVec>;  // row-major
using SVec = std::map<int, QFrac>;

DMat identity_matrix(std::size_t n);
DMat matmul(const DMat& a, const DMat& b);
DVec matvec(const DMat& a, const DVec& x);
DMat transpose(const DMat& a);
bool is_zero(const DVec& v);

void axpy(SVec& y, const QFrac& a, const SVec& x);  // y += a x
SVec scaled(const SVec& x, const QFrac& a);

// Incrementally built row space with coordinates relative to the accepted rows.
class RowBasis {
 public:
  explicit RowBasis(std::size_t width) : width_(width) {}
  // Accepts v if independent of the accepted rows; returns its index.  Otherwise
  // returns nullopt and fills coords (relative to accepted rows) when provided.
  std::optional<std::size_t> insert(const DVec& v, DVec* coords = nullptr);
  std::size_t size() const { return accepted_; }
  std::size_t width() const { return width_; }
  // Coordinates of v in the accepted rows, or nullopt if v is outside the span.
  std::optional<DVec> coordinates(const DVec& v) const;

 private:
  struct Row {
    DVec v;  // echelon row, pivot entry is 1
    std::size_t pivot;
    DVec combo;  // v = sum combo[j] * accepted_j
  };
  std::size_t width_;
  std::size_t accepted_ = 0;
  std::vector<Row> rows_;
  bool reduce(DVec& v, DVec& combo) const;
};

// Reduced row echelon basis of a subspace spanned by sparse vectors.
class SparseSubspace {
 public:
  bool insert(SVec v);  // true if the dimension grew
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SVec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  SVec reduce(SVec v) const;  // remainder after elimination
  bool contains(const SVec& v) const { return reduce(v).empty(); }
  // Coordinates relative to basis(); nullopt outside the span.
  std::optional<std::vector<QFrac>> coordinates(const SVec& v) const;

 private:
  std::vector<SVec> rows_;  // fully reduced, pivot coefficient 1
  std::vector<int> pivots_;
};

std::size_t rank_of(DMat a);
std::vector<DVec> kernel(const DMat& a, std::size_t ncols);
std::optional<DMat> inverse(DMat a);
// Solve A X = B for square invertible A.
std::optional<DMat> solve(const DMat& a, const DMat& b);

// Polynomials in T, coefficient index = degree.
using TPoly = std::vector<QFrac>;
void trim(TPoly& p);
TPoly poly_mul(const TPoly& a, const TPoly& b);
TPoly poly_from_roots(const std::vector<QScalar>& roots);
TPoly charpoly(DMat a);
// Divide p by (T - r); returns quotient if exact.
std::optional<TPoly> divide_linear(const TPoly& p, const QFrac& r);
QFrac poly_eval(const TPoly& p, const QFrac& x);

// Monomial roots c*q^e of a polynomial with fraction coefficients, found from the
// q-adic Newton polygon and confirmed by exact division.  Returns nullopt if some
// root is not a monomial.
std::optional<std::vector<QScalar>> monomial_roots(TPoly p);

}  // namespace qcc
