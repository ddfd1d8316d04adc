#ifndef RDF_POLY_HPP_
#define RDF_POLY_HPP_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rdf {

/// Upper bound on the number of symbols in one alphabet.
inline constexpr std::size_t kMaxSymbols = 8;

using Exponents = std::array<std::uint16_t, kMaxSymbols>;

/// Graded lexicographic comparison: total degree first, then symbol 0 highest.
int compare_exponents(const Exponents& a, const Exponents& b) noexcept;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept sorted in decreasing graded-lex order with no
/// zero coefficients, so equal polynomials have identical term vectors.
class Poly {
 public:
  struct Term {
    Exponents exps{};
    mpz_class coeff;
  };

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  explicit Poly(const mpz_class& c);

  static Poly variable(int index, unsigned power = 1);
  static Poly monomial(const Exponents& exps, const mpz_class& coeff);
  /// Builds from unsorted terms, combining duplicates and dropping zeros.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  /// Constant term value; only meaningful when is_constant().
  mpz_class constant_value() const;
  const Term& leading() const { return terms_.front(); }

  int degree(int var) const noexcept;
  int min_degree(int var) const noexcept;
  int total_degree() const noexcept;
  /// Bit i is set iff symbol i occurs.
  std::uint32_t variables() const noexcept;
  Exponents min_exponents() const noexcept;

  /// Positive gcd of the coefficients (zero for the zero polynomial).
  mpz_class content() const;
  /// Largest absolute coefficient.
  mpz_class height() const;

  /// Coefficients with respect to `var`; entry i multiplies var^i and no
  /// longer contains `var`.
  std::vector<Poly> coefficients_in(int var) const;
  static Poly from_coefficients(int var, const std::vector<Poly>& coeffs);

  Poly derivative(int var) const;
  /// Replaces `var` by an integer.
  Poly evaluate_at(int var, const mpz_class& value) const;
  /// Multiplies by var^power.
  Poly shifted(const Exponents& exps) const;
  Poly divided_by_monomial(const Exponents& exps) const;
  Poly divided_by_integer(const mpz_class& c) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const mpz_class& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const mpz_class& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;

 private:
  std::vector<Term> terms_;
};

/// Quotient a / b when b divides a exactly, otherwise nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// a / b, throwing std::logic_error when the division is not exact.
Poly exact_div(const Poly& a, const Poly& b);

struct GcdResult {
  Poly gcd;       // positive leading coefficient
  Poly cofactor_a;  // a / gcd
  Poly cofactor_b;  // b / gcd
};

/// Greatest common divisor over Z[x_1..x_m] together with both cofactors.
GcdResult gcd_cofactors(const Poly& a, const Poly& b);

inline Poly gcd(const Poly& a, const Poly& b) { return gcd_cofactors(a, b).gcd; }

}  // namespace rdf

#endif  // RDF_POLY_HPP_
