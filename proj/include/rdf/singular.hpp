#ifndef RDF_SINGULAR_HPP_
#define RDF_SINGULAR_HPP_

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rdf/affine.hpp"
#include "rdf/derham.hpp"
#include "rdf/dualform.hpp"
#include "rdf/report.hpp"

namespace rdf {

/// TypeA(b): M = -b kappa. TypeB(b): M = -2 + b kappa. kappa = k + 2 is a
/// symbol unless kappa0 is set.
struct ResonancePoint {
  enum class Line { TypeA, TypeB };
  Line line = Line::TypeA;
  int b = 0;
  std::optional<mpq_class> kappa0;

  std::string label() const;
};

/// Highest weight M and level k of V(M, k - M) over `alphabet`.
struct SingularParams {
  Alphabet alphabet{{}};
  RatFunc M;
  RatFunc k;
};

/// Alphabet {"kappa"}; M on the line, k = kappa - 2.
SingularParams params_at(const ResonancePoint& pt);
/// Alphabet {"M", "k"} with both symbolic.
SingularParams generic_params();

/// False when a numeric basepoint also lies on another Kac-Kazhdan line with
/// l <= 3, a <= b + 2, or on kappa = 0. Symbolic basepoints always pass.
bool avoids_other_lines(const ResonancePoint& pt);

enum class SingularPath {
  Auto,      // Direct, then EpsLimit if a Gram matrix is singular
  Direct,    // correction sum through S^-1 on the lower components
  EpsLimit,  // S^-1 at the full grade with M + eps, then eps -> 0
};

/// X_b = S^-1((M + b kappa)(f/T^b v)*), grade (b + 1, b).
VermaVector compute_Xb(int b, const SingularParams& p, SingularPath path = SingularPath::Auto);
/// Y_b = S^-1((k - M + (b - 1) kappa)(e/T^b v)*), grade (b - 1, b), b >= 1.
VermaVector compute_Yb(int b, const SingularParams& p, SingularPath path = SingularPath::Auto);

struct SingularReport {
  VermaVector vector;
  bool e_annihilates = false;
  bool ft_annihilates = false;
  bool nonzero = false;
  bool non_vacuum = false;

  bool singular() const { return e_annihilates && ft_annihilates && nonzero && non_vacuum; }
};

/// e x = 0, (f T) x = 0, x != 0 and x not a multiple of v.
SingularReport is_singular(const VermaModule& v, const VermaVector& x);

/// Coefficient of m in the PBW basis whose block order is opposite to the
/// grade's own one (EHF for p1 >= p2, FHE otherwise).
RatFunc leading_coefficient(const VermaModule& v, const VermaVector& x, const PBWMonomial& m);

enum class MffCase { F21_a1, F21_a2 };

/// F21(1,1) v = (e/T) v; F21(1,2) v = f (e/T)^2 v + (1 + kappa)(h/T)(e/T) v
/// - (1 + kappa) kappa (e/T^2) v, expanded in the PBW basis.
VermaVector mff_vector(MffCase c, const VermaModule& v);

/// All 2x2 minors of the coordinate pair vanish.
bool proportional(const VermaVector& x, const VermaVector& y);

struct RelationCase {
  enum class Type { TypeA, TypeB };
  Type type = Type::TypeB;
  int b = 1;
  int p = 1;  // site of the TypeA condition

  static RelationCase type_b(int b) { return {Type::TypeB, b, 1}; }
  static RelationCase type_a(int b, int p) { return {Type::TypeA, b, p}; }
  std::string label() const;
};

/// Positive compositions of b, in lexicographic order.
std::vector<std::vector<int>> compositions(int b);

/// AsDisplayed weights the m-th term by (-kappa)^-m; Exponential by
/// (-kappa)^-m / m!.
enum class RelationWeights { AsDisplayed, Exponential };

/// Coefficients lambda_1..lambda_n of sum lambda_j omega_j ~ 0.
std::vector<RatFunc> resonance_relation(const RelationCase& c, const Config& cfg,
                                        RelationWeights w = RelationWeights::AsDisplayed);

/// TypeB: M^n = b kappa - (M^1 + ... + M^{n-1}). TypeA: M^p = -b kappa.
Config on_resonance(const RelationCase& c, const Config& cfg);

struct RelationCheck {
  Report report;
  std::vector<RatFunc> lambda;
  std::optional<DFunc> witness;
};

/// Searches a witness g with twisted_d(g) = sum lambda_j omega_j among
/// elementary functions of order <= b + 1, on the resonance.
RelationCheck verify_resonance_relation(const RelationCase& c, const Config& cfg,
                                        RelationWeights w = RelationWeights::AsDisplayed);

}  // namespace rdf

#endif  // RDF_SINGULAR_HPP_
