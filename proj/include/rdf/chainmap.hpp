#ifndef RDF_CHAINMAP_HPP_
#define RDF_CHAINMAP_HPP_

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdf/affine.hpp"
#include "rdf/derham.hpp"
#include "rdf/dualform.hpp"
#include "rdf/report.hpp"

namespace rdf {

/// Config plus the n + 1 modules V_i = V(M^i, k - M^i), k = kappa - 2,
/// M^{n+1} = M^1 + ... + M^n - 2. Site n + 1 is infinity.
class SiteConfig {
 public:
  /// truncation <= 0 picks a bound per call (input grade + pole order + 2).
  explicit SiteConfig(Config cfg, int truncation = 0);

  const Config& config() const noexcept { return cfg_; }
  int n() const noexcept { return cfg_.n; }
  int sites() const noexcept { return cfg_.n + 1; }
  RatFunc k() const { return cfg_.kappa - RatFunc(2); }
  RatFunc weight(int site) const;
  const VermaModule& module(int site) const;
  int truncation() const noexcept { return truncation_; }

 private:
  Config cfg_;
  int truncation_;
  std::vector<std::unique_ptr<VermaModule>> modules_;
};

class TruncationTooSmall : public std::runtime_error {
 public:
  TruncationTooSmall(int site, Grade grade, int bound);
  int site;
  Grade grade;
  int bound;
};

/// Coefficients c_m of (t - z_i)^m, or of s^m with s = 1/t at infinity, for
/// m = lowest .. lowest + c.size() - 1.
struct Laurent {
  int lowest = 0;
  std::vector<RatFunc> c;

  RatFunc at(int m) const;
  int highest() const { return lowest + static_cast<int>(c.size()) - 1; }
};

/// Expansion up to and including the power up_to. site = n + 1 is infinity.
Laurent laurent_coeffs(const Config& cfg, const DFunc& f, int site, int up_to);

/// Pole order at a site (n + 1 for infinity); zero when regular.
int pole_order(const Config& cfg, const DFunc& f, int site);

/// Product in the elementary basis, through principal parts.
DFunc multiply(const Config& cfg, const DFunc& a, const DFunc& b);

/// Sum of e f_e + f f_f + h f_h.
struct GlobalSl2Func {
  std::map<Letter, DFunc> parts;

  static GlobalSl2Func single(Letter x, const DFunc& f);
  static GlobalSl2Func single(Letter x, const Elem& e, const RatFunc& c = RatFunc(1));
  bool is_zero() const noexcept { return parts.empty(); }
  void add(Letter x, const DFunc& f);
  GlobalSl2Func& operator+=(const GlobalSl2Func& o);
  GlobalSl2Func& operator*=(const RatFunc& s);
  friend GlobalSl2Func operator+(GlobalSl2Func a, const GlobalSl2Func& b) { return a += b; }
  friend GlobalSl2Func operator*(const RatFunc& s, GlobalSl2Func a) { return a *= s; }
  friend bool operator==(const GlobalSl2Func&, const GlobalSl2Func&) = default;
};

/// Pointwise bracket.
GlobalSl2Func bracket(const Config& cfg, const GlobalSl2Func& a, const GlobalSl2Func& b);

std::string to_string(const GlobalSl2Func& a, const Config& cfg);

/// One dual-basis monomial per site; entry i - 1 is site i.
using TensorKey = std::vector<PBWMonomial>;

struct TensorDual {
  std::map<TensorKey, RatFunc> terms;

  /// v_1* x ... x v_{n+1}* with coefficient c.
  static TensorDual vacuum(int sites, const RatFunc& c = RatFunc(1));
  /// The vacuum tensor with m placed at `site`.
  static TensorDual at_site(int sites, int site, const PBWMonomial& m, const RatFunc& c = RatFunc(1));

  bool is_zero() const noexcept { return terms.empty(); }
  RatFunc coeff(const TensorKey& k) const;
  void add(const TensorKey& k, const RatFunc& c);
  TensorDual& operator+=(const TensorDual& o);
  TensorDual& operator-=(const TensorDual& o);
  TensorDual& operator*=(const RatFunc& s);
  friend TensorDual operator+(TensorDual a, const TensorDual& b) { return a += b; }
  friend TensorDual operator-(TensorDual a, const TensorDual& b) { return a -= b; }
  friend TensorDual operator*(const RatFunc& s, TensorDual a) { return a *= s; }
  friend bool operator==(const TensorDual&, const TensorDual&) = default;
};

std::string to_string(const TensorDual& w, const Config& cfg);

struct Chain1Key {
  Letter letter = Letter::F;
  Elem elem;
  TensorKey tensor;

  friend bool operator<(const Chain1Key& a, const Chain1Key& b);
  friend bool operator==(const Chain1Key&, const Chain1Key&) = default;
};

/// Sum of c (X elem) x tensor.
struct Chain1 {
  std::map<Chain1Key, RatFunc> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  void add(Letter x, const Elem& e, const TensorKey& k, const RatFunc& c);
  void add(const GlobalSl2Func& a, const TensorDual& w);
  Chain1& operator+=(const Chain1& o);
  friend bool operator==(const Chain1&, const Chain1&) = default;
};

std::string to_string(const Chain1& x, const Config& cfg);

/// a(t) acting on the tensor product of the V_i*: Laurent expansion at each
/// site, with pi applied at infinity.
TensorDual mu_act(const SiteConfig& sc, const GlobalSl2Func& a, const TensorDual& w);
TensorDual mu_act(const SiteConfig& sc, const Chain1& x);

/// Sum over all sites of m <a_m, b_-m>, the central term of [a, b].
RatFunc central_residue(const SiteConfig& sc, const GlobalSl2Func& a, const GlobalSl2Func& b);

TensorDual eta1(const SiteConfig& sc, const DForm& w);
Chain1 eta0(const SiteConfig& sc, const DFunc& f);

/// eta1(twisted_d(f)) == mu_act(eta0(f)); detail holds the difference.
Report verify_chain_map(const SiteConfig& sc, const DFunc& f);

/// Rank of eta0 and eta1 on the elementary bases with order <= bound.
Report eta_injectivity_check(const SiteConfig& sc, int bound);

/// mu(a) mu(b) - mu(b) mu(a) == mu([a, b]) on w, and the central residues
/// sum to zero.
Report lie_action_check(const SiteConfig& sc, const GlobalSl2Func& a, const GlobalSl2Func& b, const TensorDual& w);

/// kappa L_-1 = sum_{i >= 0} (e T^-i-1)(f T^i) + (f T^-i-1)(e T^i)
/// + 1/2 (h T^-i-1)(h T^i); the result is divided by kappa.
VermaVector l_minus1(const VermaModule& v, const VermaVector& x);
DualVector l_minus1(const VermaModule& v, const DualVector& phi);

/// [L_-1, X T^i] = -i X T^(i-1) on every basis vector of grade p1 + p2 <= bound,
/// M and k symbolic.
Report l_minus1_commutator_check(Letter x, int i, int bound);

/// L_-1 at one site of a tensor.
TensorDual l_minus1_at(const SiteConfig& sc, int site, const TensorDual& w);

/// Derivative of the coefficients and of the elementary functions in z_i;
/// requires z_i symbolic.
DFunc dz(const Config& cfg, const DFunc& f, int i);
TensorDual dz(const Config& cfg, const TensorDual& w, int i);

/// nabla_i (a G) == (d_i a) G + a (nabla_i G), nabla_i = d_{z_i} + L_-1 at site i.
Report kz_leibniz_check(const SiteConfig& sc, const GlobalSl2Func& a, const TensorDual& g, int i);

}  // namespace rdf

#endif  // RDF_CHAINMAP_HPP_
