#ifndef RDF_LINALG_HPP_
#define RDF_LINALG_HPP_

#include <Eigen/Core>

#include <vector>

#include "rdf/ratfunc.hpp"

namespace Eigen {

template <>
struct NumTraits<rdf::Poly> : GenericNumTraits<rdf::Poly> {
  using Real = rdf::Poly;
  using NonInteger = rdf::Poly;
  using Literal = rdf::Poly;
  using Nested = rdf::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 100
  };
};

template <>
struct NumTraits<rdf::RatFunc> : GenericNumTraits<rdf::RatFunc> {
  using Real = rdf::RatFunc;
  using NonInteger = rdf::RatFunc;
  using Literal = rdf::RatFunc;
  using Nested = rdf::RatFunc;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 200
  };
};

}  // namespace Eigen

namespace rdf {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<RatFunc>;
using RatVector = Vector<RatFunc>;
using PolyMatrix = Matrix<Poly>;
using PolyVector = Vector<Poly>;

/// Fraction-free (Bareiss) row echelon form over an integral domain, in
/// place. Each update divides exactly by the previous pivot; entries stay in
/// the ring. Returns the pivot column of each pivot row; the rank is its size.
/// Row swaps are recorded in `sign` (+1 or -1) when non-null.
template <typename Scalar>
std::vector<Eigen::Index> bareiss_echelon(Matrix<Scalar>& m, int* sign = nullptr) {
  std::vector<Eigen::Index> pivots;
  Scalar previous(1);
  Eigen::Index row = 0;
  int s = 1;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      m.row(p).swap(m.row(row));
      s = -s;
    }
    const Scalar pivot = m(row, col);
    for (Eigen::Index r = row + 1; r < m.rows(); ++r) {
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col + 1; c < m.cols(); ++c) {
        Scalar v = pivot * m(r, c) - factor * m(row, c);
        m(r, c) = exact_div(v, previous);
      }
      m(r, col) = Scalar();
    }
    // Rows above the current one are left untouched; later pivots of the
    // echelon form keep the exact-division property with this pivot.
    previous = pivot;
    pivots.push_back(col);
    ++row;
  }
  if (sign != nullptr) *sign = s;
  return pivots;
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
Poly determinant(const PolyMatrix& m);

/// Rank over the fraction field.
Eigen::Index rank(const RatMatrix& m);

struct LinearSolution {
  enum class Status { Solved, NoSolution, Singular };
  Status status = Status::Solved;
  RatVector x;            // one exact solution when Solved
  Eigen::Index rank = 0;  // rank of the coefficient matrix
};

/// Solves A x = b exactly by elimination over the fraction field on sparse
/// rows, choosing pivots to limit fill-in (Markowitz). Square rank-deficient
/// systems report Singular; inconsistent systems report NoSolution; other
/// consistent systems return the solution with free unknowns set to zero.
LinearSolution solve_linear(const RatMatrix& a, const RatVector& b);

/// Same contract as solve_linear, computed by fraction-free (Bareiss)
/// elimination on the row-cleared augmented matrix.
LinearSolution solve_linear_fraction_free(const RatMatrix& a, const RatVector& b);

/// Row-wise common denominators cleared: returns a polynomial matrix whose
/// rows are the rows of `m` scaled by nonzero polynomials.
PolyMatrix clear_denominators(const RatMatrix& m);

}  // namespace rdf

#endif  // RDF_LINALG_HPP_
