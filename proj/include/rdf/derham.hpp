#ifndef RDF_DERHAM_HPP_
#define RDF_DERHAM_HPP_

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdf/alphabet.hpp"

namespace rdf {

/// Parameters of the punctured line: n sites, weights M^1..M^n, points
/// z_1..z_n and kappa. Each entry is either a symbol of `alphabet` or a
/// rational constant.
struct Config {
  int n = 1;
  Alphabet alphabet{{}};
  RatFunc kappa;
  std::vector<RatFunc> M;
  std::vector<RatFunc> z;

  /// Alphabet {kappa, M1..Mn, z1..zn, extra...} with every parameter symbolic.
  static Config symbolic(int n, const std::vector<std::string>& extra = {});

  const RatFunc& m(int i) const { return M.at(static_cast<std::size_t>(i - 1)); }
  const RatFunc& zi(int i) const { return z.at(static_cast<std::size_t>(i - 1)); }
  RatFunc m_sum() const;
  /// M^{n+1} = M^1 + ... + M^n - 2.
  RatFunc m_inf() const { return m_sum() - RatFunc(2); }
  /// Throws std::invalid_argument on coinciding numeric points or kappa = 0.
  void validate() const;
  std::string format(const RatFunc& f) const { return alphabet.format(f); }
};

/// (t - z_i)^-b (PoleAt, b >= 1) or t^b (PolyPow, b >= 0) as a function;
/// d(t - z_i)/(t - z_i)^b or t^b dt as a form.
struct Elem {
  enum class Kind { PolyPow, PoleAt };
  Kind kind = Kind::PolyPow;
  int site = 0;
  int order = 0;

  static Elem pole(int i, int b) { return {Kind::PoleAt, i, b}; }
  static Elem power(int b) { return {Kind::PolyPow, 0, b}; }
  bool is_log() const noexcept { return kind == Kind::PoleAt && order == 1; }

  friend auto operator<=>(const Elem&, const Elem&) = default;
};

std::string to_string(const Elem& e);

/// Finite linear combination of elementary functions or forms.
template <typename Tag>
struct ElemSum {
  std::map<Elem, RatFunc> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  RatFunc coeff(const Elem& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? RatFunc() : it->second;
  }
  void add(const Elem& e, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(e, RatFunc());
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
  static ElemSum single(const Elem& e, const RatFunc& c = RatFunc(1)) {
    ElemSum out;
    out.add(e, c);
    return out;
  }
  ElemSum& operator+=(const ElemSum& o) {
    for (const auto& [e, c] : o.terms) add(e, c);
    return *this;
  }
  ElemSum& operator-=(const ElemSum& o) {
    for (const auto& [e, c] : o.terms) add(e, -c);
    return *this;
  }
  ElemSum& operator*=(const RatFunc& s) {
    if (s.is_zero()) terms.clear();
    for (auto& [e, c] : terms) c *= s;
    return *this;
  }
  friend ElemSum operator+(ElemSum a, const ElemSum& b) { return a += b; }
  friend ElemSum operator-(ElemSum a, const ElemSum& b) { return a -= b; }
  friend ElemSum operator*(const RatFunc& s, ElemSum a) { return a *= s; }
  friend bool operator==(const ElemSum&, const ElemSum&) = default;
};

struct FuncTag {};
struct FormTag {};
using DFunc = ElemSum<FuncTag>;
using DForm = ElemSum<FormTag>;

std::string to_string(const DFunc& f, const Config& cfg);
std::string to_string(const DForm& w, const Config& cfg);

/// Value as a rational function of t; the alphabet must contain "t".
RatFunc as_rational(const Config& cfg, const DFunc& f);
/// Coefficient of dt as a rational function of t.
RatFunc as_rational(const Config& cfg, const DForm& w);

/// The twisted differential d + alpha, alpha = -(1/kappa) sum M^i dt/(t - z_i).
DForm twisted_d(const Config& cfg, const DFunc& f);

/// omega_i = M^i d(t - z_i)/(t - z_i).
DForm log_form(const Config& cfg, int i);

/// a_1..a_n, a_{n+1}; std::nullopt stands for infinity.
struct ResonanceProfile {
  std::vector<std::optional<long>> a;
  int count = 0;
};

/// Requires numeric M^i and kappa.
ResonanceProfile resonance_profile(const Config& cfg);

/// Pole orders bounded by a_i at every resonance site, infinity included.
/// At infinity t^b dt has pole order b + 2 and the function t^b order b.
bool restricted_check(const Config& cfg, const DForm& w);
bool restricted_check(const Config& cfg, const DFunc& f);

/// All elementary functions with PoleAt order <= bound and PolyPow <= bound.
std::vector<Elem> function_basis(int n, int bound);

/// g with twisted_d(g) = sum lambda_i omega_i inside function_basis(n, bound),
/// or nullopt when no such g exists there.
std::optional<DFunc> verify_relation(const Config& cfg, const std::vector<RatFunc>& lambda, int bound);

/// The form sum lambda_i omega_i.
DForm log_combination(const Config& cfg, const std::vector<RatFunc>& lambda);

class ResonanceObstruction : public std::runtime_error {
 public:
  /// site n + 1 stands for infinity; order is the elementary form's index.
  ResonanceObstruction(int site, int order);
  int site;
  int order;
};

struct LogReduction {
  std::vector<RatFunc> c;
  DFunc g;
};

/// w = sum c_i omega_i + twisted_d(g).
LogReduction reduce_to_log(const Config& cfg, const DForm& w);

}  // namespace rdf

#endif  // RDF_DERHAM_HPP_
