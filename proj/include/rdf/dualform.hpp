#ifndef RDF_DUALFORM_HPP_
#define RDF_DUALFORM_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "rdf/affine.hpp"
#include "rdf/report.hpp"

namespace rdf {

/// Coordinates on the basis dual to component_basis(grade).
struct DualTag {};
using DualVector = GradedVector<DualTag>;

inline std::string to_string(const DualVector& x, const Alphabet& alphabet) {
  return format_terms(x.coeffs, alphabet, true);
}

/// e T^m -> f T^-m, f T^m -> e T^-m, h T^m -> h T^-m, c -> c.
Gen transpose_anti(const Gen& g) noexcept;
/// Reverses the word and transposes each letter.
std::vector<Gen> transpose_anti(std::span<const Gen> word);

/// Gram matrix of the Shapovalov form over Z[M, k] in component_basis order.
/// Memoized and safe for concurrent callers.
const PolyMatrix& universal_gram(Grade g);

/// Gram matrix at the module's parameters.
RatMatrix shapovalov_gram(const VermaModule& v, Grade g);

/// S(x, y); zero when the grades differ.
RatFunc shapovalov(const VermaModule& v, const VermaVector& x, const VermaVector& y);

/// (g . phi)(x) = phi(tau(g) x).
DualVector contragradient_act(const VermaModule& v, const Gen& g, const DualVector& phi);

/// The map x -> S(x, .) from V to V*.
DualVector shapovalov_map(const VermaModule& v, const VermaVector& x);

class GramSingular : public std::runtime_error {
 public:
  explicit GramSingular(Grade g);
  Grade grade;
};

/// The x with S(x, .) = phi.
VermaVector shapovalov_inverse_apply(const VermaModule& v, const DualVector& phi);

/// Identity (a) in V(M, k - M)* at grade (b+1, b), M and k symbolic.
Report verify_identity_a(int b);
/// Identity (b) in V(M, k - M)* at grade (b-1, b), b >= 2.
Report verify_identity_b(int b);

/// Both sides of the identities, exposed for coordinate-level comparison.
struct IdentitySides {
  DualVector lhs;
  DualVector rhs;
};
IdentitySides identity_a_sides(int b);
IdentitySides identity_b_sides(int b);

struct GramFactor {
  std::string label;
  Poly form;
  int multiplicity = 0;
};

/// det(gram) split by trial division against Kac-Kazhdan forms and
/// M, k - M, kappa. Whatever does not divide out stays in `residual`.
struct GramDeterminant {
  Grade grade;
  Poly det;
  std::vector<GramFactor> factors;
  Poly residual;
  bool fully_matched() const { return residual.is_constant() && !residual.is_zero(); }
};

GramDeterminant gram_determinant(Grade g);

}  // namespace rdf

#endif  // RDF_DUALFORM_HPP_
