#ifndef RDF_RATFUNC_HPP_
#define RDF_RATFUNC_HPP_

#include <gmpxx.h>

#include <map>
#include <span>
#include <stdexcept>

#include "rdf/poly.hpp"

namespace rdf {

class DenominatorVanishes : public std::domain_error {
 public:
  DenominatorVanishes() : std::domain_error("denominator vanishes after substitution") {}
};

class PoleAtZero : public std::domain_error {
 public:
  PoleAtZero() : std::domain_error("pole at eps = 0") {}
};

/// Element of Q(x_1..x_m): a reduced fraction of integer polynomials.
/// Invariants: den != 0, gcd(num, den) = 1 including integer content, and the
/// leading coefficient of den is positive, so equality is representation
/// equality.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& num, const Poly& den);
  explicit RatFunc(const mpq_class& q);

  static RatFunc variable(int index) { return RatFunc(Poly::variable(index)); }
  static RatFunc fraction(long n, long d) { return RatFunc(mpq_class(n, d)); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  /// Rational value; requires is_constant().
  mpq_class constant_value() const;
  std::uint32_t variables() const noexcept { return num_.variables() | den_.variables(); }

  RatFunc inverse() const;
  RatFunc pow(int e) const;
  RatFunc derivative(int var) const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize_sign();

  Poly num_;
  Poly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

RatFunc arith(ArithOp op, const RatFunc& a, const RatFunc& b);

/// Evaluates a polynomial at rational-function values, one per symbol index.
/// Symbols beyond values.size() are left in place.
RatFunc evaluate(const Poly& p, std::span<const RatFunc> values);

/// Simultaneous substitution of symbols (by index); unbound symbols are kept.
RatFunc substitute(const RatFunc& f, const std::map<int, RatFunc>& bindings);

/// Value at eps = 0 of f regarded as a function of the symbol `eps`.
RatFunc limit_eps(const RatFunc& f, int eps);

}  // namespace rdf

#endif  // RDF_RATFUNC_HPP_
