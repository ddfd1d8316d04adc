#ifndef RDF_AFFINE_HPP_
#define RDF_AFFINE_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "rdf/alphabet.hpp"
#include "rdf/linalg.hpp"

namespace rdf {

/// Bidegree (p1, p2). Lowering generators have non-negative degree, raising
/// ones negative.
struct Grade {
  int p1 = 0;
  int p2 = 0;

  friend Grade operator+(Grade a, Grade b) { return {a.p1 + b.p1, a.p2 + b.p2}; }
  friend Grade operator-(Grade a, Grade b) { return {a.p1 - b.p1, a.p2 - b.p2}; }
  friend auto operator<=>(const Grade&, const Grade&) = default;
  bool valid() const noexcept { return p1 >= 0 && p2 >= 0; }
};

enum class Letter { E, F, H, C };

/// X * T^tpow; tpow is zero for c.
struct Gen {
  Letter letter = Letter::E;
  int tpow = 0;

  static Gen e(int p = 0) { return {Letter::E, p}; }
  static Gen f(int p = 0) { return {Letter::F, p}; }
  static Gen h(int p = 0) { return {Letter::H, p}; }
  static Gen c() { return {Letter::C, 0}; }

  Grade degree() const noexcept;
  bool is_lowering() const noexcept;
  bool is_central() const noexcept { return letter == Letter::C; }
  bool is_cartan_zero() const noexcept { return letter == Letter::H && tpow == 0; }
  bool is_raising() const noexcept { return !is_lowering() && !is_central() && !is_cartan_zero(); }

  friend auto operator<=>(const Gen&, const Gen&) = default;
};

std::string to_string(const Gen& g);

struct GenTerm {
  Gen gen;
  long coeff = 0;
};

/// [a T^i, b T^j] = [a,b] T^(i+j) + i <a,b> delta_{i+j,0} c.
std::vector<GenTerm> bracket(const Gen& a, const Gen& b);

/// e T^i <-> f T^i, h T^i -> -h T^i, c -> c.
GenTerm pi_twist(const Gen& g);

enum class Ordering { FHE, EHF };

/// FHE for p1 >= p2, EHF for p1 < p2.
Ordering ordering_for(Grade g) noexcept;

/// Product of lowering generators applied to v: f T^-i for i in fs,
/// h T^-j for j in hs, e T^-l for l in es, each list weakly decreasing.
/// The block order (FHE or EHF) is fixed by the grade.
struct PBWMonomial {
  std::vector<int> fs;
  std::vector<int> hs;
  std::vector<int> es;

  Grade grade() const noexcept;
  Ordering ordering() const noexcept { return ordering_for(grade()); }
  std::size_t length() const noexcept { return fs.size() + hs.size() + es.size(); }
  bool is_vacuum() const noexcept { return length() == 0; }
  /// Factors left to right in the given block order.
  std::vector<Gen> word(Ordering o) const;
  std::vector<Gen> word() const { return word(ordering()); }
  /// Sorts each list into weakly decreasing order.
  void canonicalize();

  /// Basis order: fewer factors first, then lexicographic in (fs, hs, es).
  friend bool operator<(const PBWMonomial& a, const PBWMonomial& b);
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;
};

struct PBWMonomialHash {
  std::size_t operator()(const PBWMonomial& m) const noexcept;
};

/// Text such as "f*(h/T)*(e/T^2)*v" in the monomial's own block order.
std::string to_string(const PBWMonomial& m);

/// All PBW monomials of the grade in basis order.
const std::vector<PBWMonomial>& component_basis(Grade g);

/// Position of a monomial inside component_basis(m.grade()).
std::size_t basis_index(const PBWMonomial& m);

/// Coefficients in Z[M, k]: symbol 0 is M, symbol 1 is k.
using UniversalCombination = std::map<PBWMonomial, Poly>;

/// {"M", "k"}
const Alphabet& universal_alphabet();

/// g applied to the basis vector m, expanded in the basis of the target
/// grade. Memoized and safe for concurrent callers.
const UniversalCombination& universal_act(const Gen& g, const PBWMonomial& m);

/// The word (leftmost factor outermost) applied to v, in the basis of its
/// grade.
UniversalCombination universal_word(std::span<const Gen> word);

/// Element of one graded component; coefficients over the caller's alphabet.
/// The tag separates primal vectors from dual ones.
template <typename Tag>
struct GradedVector {
  Grade grade;
  std::map<PBWMonomial, RatFunc> coeffs;

  bool is_zero() const noexcept { return coeffs.empty(); }

  RatFunc coeff(const PBWMonomial& m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? RatFunc() : it->second;
  }

  void add(const PBWMonomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.try_emplace(m, RatFunc());
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }

  GradedVector& operator+=(const GradedVector& o) {
    if (!o.is_zero() && is_zero()) grade = o.grade;
    for (const auto& [m, c] : o.coeffs) add(m, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    if (!o.is_zero() && is_zero()) grade = o.grade;
    for (const auto& [m, c] : o.coeffs) add(m, -c);
    return *this;
  }
  GradedVector& operator*=(const RatFunc& s) {
    if (s.is_zero()) coeffs.clear();
    for (auto& [m, c] : coeffs) c *= s;
    return *this;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const RatFunc& s, GradedVector a) { return a *= s; }
  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return a.grade == b.grade && a.coeffs == b.coeffs;
  }

  static GradedVector basis(const PBWMonomial& m, const RatFunc& c = RatFunc(1)) {
    GradedVector out{m.grade(), {}};
    out.add(m, c);
    return out;
  }

  /// Coordinates in component_basis(grade).
  RatVector coordinates() const {
    const auto& b = component_basis(grade);
    RatVector x = RatVector::Constant(static_cast<Eigen::Index>(b.size()), RatFunc());
    for (const auto& [m, c] : coeffs) x(static_cast<Eigen::Index>(basis_index(m))) = c;
    return x;
  }

  static GradedVector from_coordinates(Grade g, const RatVector& x) {
    const auto& b = component_basis(g);
    if (static_cast<std::size_t>(x.size()) != b.size()) throw std::invalid_argument("coordinate length mismatch");
    GradedVector out{g, {}};
    for (std::size_t i = 0; i < b.size(); ++i) out.add(b[i], x(static_cast<Eigen::Index>(i)));
    return out;
  }
};

struct PrimalTag {};
using VermaVector = GradedVector<PrimalTag>;

/// "c1*[m1] + c2*[m2]" with coefficients in the given alphabet; "0" if empty.
std::string format_terms(const std::map<PBWMonomial, RatFunc>& coeffs, const Alphabet& alphabet, bool dual);

inline std::string to_string(const VermaVector& x, const Alphabet& alphabet) {
  return format_terms(x.coeffs, alphabet, false);
}

/// The Verma module V(M, k - M): h v = M v, c v = k v, raising generators
/// kill v. Parameters live in the caller's alphabet.
class VermaModule {
 public:
  VermaModule(RatFunc m, RatFunc k);

  const RatFunc& M() const noexcept { return m_; }
  const RatFunc& k() const noexcept { return k_; }
  RatFunc kappa() const { return k_ + RatFunc(2); }

  VermaVector vacuum() const;
  VermaVector basis_vector(const PBWMonomial& m) const;

  VermaVector act(const Gen& g, const VermaVector& x) const;
  /// Rightmost generator applies first.
  VermaVector act_word(std::span<const Gen> word, const VermaVector& x) const;
  /// Matrix of g from component `from` to from + deg g, columns indexed by
  /// the source basis.
  const RatMatrix& act_matrix(const Gen& g, Grade from) const;

  /// Universal polynomial evaluated at (M, k).
  RatFunc eval(const Poly& p) const;

 private:
  struct ActKey {
    Gen gen;
    Grade from;
    friend bool operator<(const ActKey& a, const ActKey& b) {
      return std::tie(a.gen, a.from) < std::tie(b.gen, b.from);
    }
  };

  RatFunc m_;
  RatFunc k_;
  mutable std::shared_mutex mutex_;
  mutable std::map<ActKey, std::unique_ptr<RatMatrix>> matrices_;
};

/// Coordinates of x in the basis {m.word(o) v : m in component_basis(x.grade)},
/// i.e. with block order o in place of the grade's own one.
std::map<PBWMonomial, RatFunc> coordinates_in_order(const VermaModule& v, const VermaVector& x, Ordering o);

/// Kac-Kazhdan reducibility conditions at level k with kappa = k + 2.
struct KacKazhdanLine {
  enum class Type { A, B, KappaZero };
  Type type = Type::A;
  int l = 0;
  int a = 0;
  Grade degree;  // of the predicted singular vector
  /// Linear form in Z[M, k] vanishing exactly on the line.
  Poly form() const;
};

/// Type A: M = l - 1 - (a-1) kappa, degree (la, l(a-1)).
/// Type B: M = -l - 1 + a kappa, degree (l(a-1), la).
/// The kappa = 0 condition comes last.
std::vector<KacKazhdanLine> kac_kazhdan_lines(int l_max, int a_max);

}  // namespace rdf

#endif  // RDF_AFFINE_HPP_
