#ifndef RDF_GAUSSMANIN_HPP_
#define RDF_GAUSSMANIN_HPP_

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdf/derham.hpp"
#include "rdf/linalg.hpp"
#include "rdf/report.hpp"

namespace rdf {

/// 2-form on (z, t)-space: keys (p, q) with p < q stand for dz_p ^ dz_q,
/// where index n + 1 is dt. Components are rational in t, z, M, kappa; the
/// alphabet must contain "t".
struct MixedForm2 {
  std::map<std::pair<int, int>, RatFunc> comps;

  /// Adds c dx_p ^ dx_q, reordering the key with a sign.
  void add(int p, int q, const RatFunc& c);
  RatFunc coeff(int p, int q) const;
  bool is_zero() const noexcept { return comps.empty(); }
  friend bool operator==(const MixedForm2&, const MixedForm2&) = default;
};

/// The same 2-form in elementary coordinates:
/// sum_{j<k} zz[j,k] dz_j ^ dz_k + sum_j dz_j ^ zt[j].
struct GMExpansion {
  std::map<std::pair<int, int>, DFunc> zz;
  std::vector<DForm> zt;  // index j - 1

  explicit GMExpansion(int n = 0) : zt(static_cast<std::size_t>(n)) {}
  GMExpansion& operator+=(const GMExpansion& o);
  GMExpansion& operator*=(const RatFunc& s);
};

MixedForm2 to_mixed(const Config& cfg, const GMExpansion& x);

enum class BetaMode { Closed, Direct };

/// kappa beta ^ E from the two closed formulas.
GMExpansion beta_wedge_expansion(const Config& cfg, const Elem& e);

/// kappa beta ^ w. Closed uses beta_wedge_expansion; Direct wedges the
/// 1-forms beta and w component by component.
MixedForm2 beta_wedge(const Config& cfg, const DForm& w, BetaMode mode);

/// eta_j dt where eta = d w + beta ^ w = sum eta_j dz_j ^ dt + (dz ^ dz part).
/// Coefficients of w are differentiated in the symbol z_j when it is symbolic.
DForm covariant_derivative(const Config& cfg, const DForm& w, int j);

class NonLogarithmicRemainder : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// dir[j-1](i-1, m-1) is the coefficient of omega_m in kappa nabla_{z_j} omega_i.
struct ConnectionMatrix {
  int n = 0;
  std::vector<RatMatrix> dir;
};

ConnectionMatrix gm_connection_matrix(const Config& cfg);

/// kappa nabla_i (kappa nabla_j w) - kappa nabla_j (kappa nabla_i w).
DForm gm_curvature(const Config& cfg, const DForm& w, int i, int j);

/// For every pair of directions and every omega_m, the curvature is reduced
/// to logarithmic forms and must be exact (checked with verify_relation).
Report verify_flatness(const Config& cfg);

/// For each omega_i and direction j, nabla_{z_j} omega_i stays in the span
/// of the omega's and passes restricted_check. Needs numeric M and kappa.
Report verify_restricted_invariance(const Config& cfg);

}  // namespace rdf

#endif  // RDF_GAUSSMANIN_HPP_
