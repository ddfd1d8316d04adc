#include "rdf/poly.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace rdf {

int compare_exponents(const Exponents& a, const Exponents& b) noexcept {
  unsigned da = 0;
  unsigned db = 0;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool exps_greater(const Exponents& a, const Exponents& b) {
  return compare_exponents(a, b) > 0;
}

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxSymbols; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

bool exps_divides(const Exponents& d, const Exponents& n) {
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (d[i] > n[i]) return false;
  }
  return true;
}

Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxSymbols; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

// Merges sorted term lists: a + sign * b.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                              bool subtract) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_exponents(a[i].exps, b[j].exps);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      mpz_class s = subtract ? mpz_class(a[i].coeff - b[j].coeff) : mpz_class(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().coeff = -out.back().coeff;
  }
  return out;
}

// r - coeff * x^exps * b, all sorted.
std::vector<Poly::Term> sub_scaled(const std::vector<Poly::Term>& r, const Exponents& exps,
                                   const mpz_class& coeff, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(r.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Exponents e{};
  bool have = false;
  auto load = [&]() {
    if (j < b.size()) {
      e = add_exps(b[j].exps, exps);
      have = true;
    } else {
      have = false;
    }
  };
  load();
  while (i < r.size() && have) {
    int c = compare_exponents(r[i].exps, e);
    if (c > 0) {
      out.push_back(r[i++]);
    } else if (c < 0) {
      out.push_back({e, -coeff * b[j].coeff});
      ++j;
      load();
    } else {
      mpz_class s = r[i].coeff - coeff * b[j].coeff;
      if (s != 0) out.push_back({e, std::move(s)});
      ++i;
      ++j;
      load();
    }
  }
  for (; i < r.size(); ++i) out.push_back(r[i]);
  while (have) {
    out.push_back({e, -coeff * b[j].coeff});
    ++j;
    load();
  }
  return out;
}

}  // namespace

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Exponents{}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back({Exponents{}, c});
}

Poly Poly::variable(int index, unsigned power) {
  if (index < 0 || static_cast<std::size_t>(index) >= kMaxSymbols) {
    throw std::out_of_range("symbol index out of range");
  }
  Exponents e{};
  e[static_cast<std::size_t>(index)] = static_cast<std::uint16_t>(power);
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& exps, const mpz_class& coeff) {
  Poly p;
  if (coeff != 0) p.terms_.push_back({exps, coeff});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return exps_greater(a.exps, b.exps); });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == Exponents{});
}

bool Poly::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].exps == Exponents{} && terms_[0].coeff == 1;
}

mpz_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  return last.exps == Exponents{} ? last.coeff : mpz_class(0);
}

int Poly::degree(int var) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exps[static_cast<std::size_t>(var)]);
  return d;
}

int Poly::min_degree(int var) const noexcept {
  if (terms_.empty()) return 0;
  int d = terms_[0].exps[static_cast<std::size_t>(var)];
  for (const auto& t : terms_) d = std::min<int>(d, t.exps[static_cast<std::size_t>(var)]);
  return d;
}

int Poly::total_degree() const noexcept {
  if (terms_.empty()) return -1;
  int d = 0;
  for (auto e : terms_[0].exps) d += e;
  return d;
}

std::uint32_t Poly::variables() const noexcept {
  std::uint32_t mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (t.exps[i] != 0) mask |= (1u << i);
    }
  }
  return mask;
}

Exponents Poly::min_exponents() const noexcept {
  if (terms_.empty()) return {};
  Exponents m = terms_[0].exps;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxSymbols; ++i) m[i] = std::min(m[i], t.exps[i]);
  }
  return m;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class Poly::height() const {
  mpz_class h = 0;
  for (const auto& t : terms_) {
    if (mpz_cmpabs(t.coeff.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(t.coeff);
  }
  return h;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  const auto v = static_cast<std::size_t>(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(degree(var), 0)) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    s.exps[v] = 0;
    buckets[t.exps[v]].push_back(std::move(s));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    // Zeroing one exponent keeps relative order only within equal var degree,
    // so a re-sort is required.
    out.push_back(from_terms(std::move(b)));
  }
  return out;
}

Poly Poly::from_coefficients(int var, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& t : coeffs[i].terms_) {
      Term s = t;
      s.exps[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(s.exps[static_cast<std::size_t>(var)] + i);
      all.push_back(std::move(s));
    }
  }
  return from_terms(std::move(all));
}

Poly Poly::derivative(int var) const {
  const auto v = static_cast<std::size_t>(var);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[v] == 0) continue;
    Term s = t;
    s.coeff *= t.exps[v];
    s.exps[v] = static_cast<std::uint16_t>(s.exps[v] - 1);
    out.push_back(std::move(s));
  }
  return from_terms(std::move(out));
}

Poly Poly::evaluate_at(int var, const mpz_class& value) const {
  const auto v = static_cast<std::size_t>(var);
  std::vector<mpz_class> powers{1};
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const std::size_t e = t.exps[v];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Term s{t.exps, t.coeff * powers[e]};
    s.exps[v] = 0;
    out.push_back(std::move(s));
  }
  return from_terms(std::move(out));
}

Poly Poly::shifted(const Exponents& exps) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.exps = add_exps(t.exps, exps);
  return p;
}

Poly Poly::divided_by_monomial(const Exponents& exps) const {
  Poly p = *this;
  for (auto& t : p.terms_) {
    if (!exps_divides(exps, t.exps)) throw std::logic_error("monomial does not divide polynomial");
    t.exps = sub_exps(t.exps, exps);
  }
  return p;
}

Poly Poly::divided_by_integer(const mpz_class& c) const {
  if (c == 0) throw DivisionByZero();
  Poly p = *this;
  for (auto& t : p.terms_) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) {
      throw std::logic_error("integer does not divide polynomial");
    }
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  }
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    Poly p = large;
    const auto& s = small.terms_[0];
    for (auto& t : p.terms_) {
      t.exps = add_exps(t.exps, s.exps);
      t.coeff *= s.coeff;
    }
    return p;
  }
  std::vector<Poly::Term> prods;
  prods.reserve(small.size() * large.size());
  for (const auto& s : small.terms_) {
    for (const auto& l : large.terms_) prods.push_back({add_exps(s.exps, l.exps), s.coeff * l.coeff});
  }
  return Poly::from_terms(std::move(prods));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Poly();
  const auto& lb = b.leading();
  if (b.size() == 1) {
    Poly q = a;
    for (const auto& t : q.terms()) {
      if (!exps_divides(lb.exps, t.exps) || !mpz_divisible_p(t.coeff.get_mpz_t(), lb.coeff.get_mpz_t())) {
        return std::nullopt;
      }
    }
    return a.divided_by_monomial(lb.exps).divided_by_integer(lb.coeff);
  }
  for (std::size_t v = 0; v < kMaxSymbols; ++v) {
    const int iv = static_cast<int>(v);
    if (a.degree(iv) < b.degree(iv)) return std::nullopt;
    if (a.degree(iv) - a.min_degree(iv) < b.degree(iv) - b.min_degree(iv)) return std::nullopt;
  }
  std::vector<Poly::Term> r = a.terms();
  std::vector<Poly::Term> q;
  while (!r.empty()) {
    const auto& lt = r.front();
    if (!exps_divides(lb.exps, lt.exps) || !mpz_divisible_p(lt.coeff.get_mpz_t(), lb.coeff.get_mpz_t())) {
      return std::nullopt;
    }
    Poly::Term t{sub_exps(lt.exps, lb.exps), 0};
    mpz_divexact(t.coeff.get_mpz_t(), lt.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
    r = sub_scaled(r, t.exps, t.coeff, b.terms());
    q.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(q));
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return std::move(*q);
}

namespace {

Poly normalized_sign(Poly p) { return (!p.is_zero() && p.leading().coeff < 0) ? -p : p; }

std::vector<int> variable_list(std::uint32_t mask) {
  std::vector<int> v;
  for (int i = 0; i < static_cast<int>(kMaxSymbols); ++i) {
    if (mask & (1u << i)) v.push_back(i);
  }
  return v;
}

Poly primitive_part(const Poly& p) {
  mpz_class c = p.content();
  if (p.leading().coeff < 0) c = -c;
  return c == 1 ? p : p.divided_by_integer(c);
}

Poly gcd_core(const Poly& a, const Poly& b);

// Symmetric xi-adic reconstruction in `var` of a polynomial evaluated at xi.
Poly genpoly(const Poly& gamma, const mpz_class& xi, int var) {
  std::vector<Poly> coeffs;
  Poly e = gamma;
  const mpz_class half = xi / 2;
  while (!e.is_zero()) {
    std::vector<Poly::Term> digit;
    std::vector<Poly::Term> rest;
    for (const auto& t : e.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      mpz_class q = t.coeff - r;
      mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), xi.get_mpz_t());
      if (r != 0) digit.push_back({t.exps, r});
      if (q != 0) rest.push_back({t.exps, q});
    }
    coeffs.push_back(Poly::from_terms(std::move(digit)));
    e = Poly::from_terms(std::move(rest));
    if (coeffs.size() > 4096) break;
  }
  return Poly::from_coefficients(var, coeffs);
}

// Heuristic gcd (evaluation at a large integer and xi-adic lifting).
// Returns the full gcd including integer content, or nullopt on failure.
std::optional<Poly> gcd_heuristic(const Poly& a, const Poly& b, int depth) {
  if (a.is_zero()) return normalized_sign(b);
  if (b.is_zero()) return normalized_sign(a);
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    return Poly(g);
  }
  const std::uint32_t mask = a.variables() | b.variables();
  const auto vars = variable_list(mask);
  int var = vars.front();
  for (int v : vars) {
    if (std::max(a.degree(v), b.degree(v)) < std::max(a.degree(var), b.degree(var))) var = v;
  }
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());

  mpz_class xi = 2 * std::min(a.height(), b.height()) + 2;
  const int maxdeg = std::max(a.degree(var), b.degree(var));
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (static_cast<long>(mpz_sizeinbase(xi.get_mpz_t(), 2)) * maxdeg > 4000000) return std::nullopt;
    Poly ae = a.evaluate_at(var, xi);
    Poly be = b.evaluate_at(var, xi);
    if (!ae.is_zero() && !be.is_zero()) {
      auto gamma = gcd_heuristic(ae, be, depth + 1);
      if (gamma) {
        Poly g = genpoly(*gamma, xi, var);
        if (!g.is_zero()) {
          g = primitive_part(g);
          if (divide_exact(a, g) && divide_exact(b, g)) return g * cg;
        }
      }
    }
    xi = (xi * 73794) / 27011;
  }
  return std::nullopt;
}

std::vector<Poly> prem_sequence_step(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  // Pseudo-remainder of a by b as coefficient vectors in the main variable.
  std::vector<Poly> r = a;
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (r.size() > db && !r.empty()) {
    if (r.back().is_zero()) {
      r.pop_back();
      continue;
    }
    const Poly lr = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c *= lb;
    for (std::size_t i = 0; i <= db; ++i) r[i + shift] -= lr * b[i];
    r.pop_back();
  }
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

Poly content_of(const std::vector<Poly>& coeffs) {
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalized_sign(c) : gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

std::vector<Poly> divide_all(const std::vector<Poly>& coeffs, const Poly& d) {
  if (d.is_one()) return coeffs;
  std::vector<Poly> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(exact_div(c, d));
  return out;
}

// Primitive polynomial remainder sequence in `var`.
Poly gcd_prs(const Poly& a, const Poly& b, int var) {
  auto ca_vec = a.coefficients_in(var);
  auto cb_vec = b.coefficients_in(var);
  Poly ca = content_of(ca_vec);
  Poly cb = content_of(cb_vec);
  Poly c = gcd(ca, cb);
  auto A = divide_all(ca_vec, ca);
  auto B = divide_all(cb_vec, cb);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    auto R = prem_sequence_step(A, B);
    A = std::move(B);
    if (R.empty()) break;
    if (R.size() == 1) {
      A = {Poly(1)};
      break;
    }
    B = divide_all(R, content_of(R));
  }
  Poly g = Poly::from_coefficients(var, A);
  g = normalized_sign(g);
  Poly cg = content_of(A);
  if (!cg.is_one() && !cg.is_zero()) g = exact_div(g, cg);
  return normalized_sign(g * c);
}

// Both arguments primitive with no monomial factor.
Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b || a == -b) return normalized_sign(a);
  const std::uint32_t va = a.variables();
  const std::uint32_t vb = b.variables();
  if (va != vb) {
    const Poly& x = (va & ~vb) ? a : b;
    const Poly& y = (va & ~vb) ? b : a;
    const std::uint32_t only = x.variables() & ~y.variables();
    int var = 0;
    while (!(only & (1u << var))) ++var;
    Poly g = normalized_sign(y);
    for (const auto& c : x.coefficients_in(var)) {
      if (c.is_zero()) continue;
      g = gcd(g, c);
      if (g.is_one()) break;
    }
    return g;
  }
  if (auto h = gcd_heuristic(a, b, 0)) return normalized_sign(*h);
  const auto vars = variable_list(va);
  int var = vars.front();
  for (int v : vars) {
    if (std::max(a.degree(v), b.degree(v)) < std::max(a.degree(var), b.degree(var))) var = v;
  }
  return gcd_prs(a, b, var);
}

}  // namespace

GcdResult gcd_cofactors(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {Poly(), Poly(), Poly()};
  if (a.is_zero()) {
    Poly g = normalized_sign(b);
    return {g, Poly(), Poly(g == b ? 1 : -1)};
  }
  if (b.is_zero()) {
    Poly g = normalized_sign(a);
    return {g, Poly(g == a ? 1 : -1), Poly()};
  }
  mpz_class ca = a.content();
  mpz_class cb = b.content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  const Exponents ma = a.min_exponents();
  const Exponents mb = b.min_exponents();
  Exponents mg{};
  for (std::size_t i = 0; i < kMaxSymbols; ++i) mg[i] = std::min(ma[i], mb[i]);

  if (a.is_constant() || b.is_constant() || a.size() == 1 || b.size() == 1) {
    Poly g = Poly::monomial(mg, cg);
    return {g, exact_div(a, g), exact_div(b, g)};
  }
  Poly A = a.divided_by_monomial(ma).divided_by_integer(ca);
  Poly B = b.divided_by_monomial(mb).divided_by_integer(cb);
  Poly G = gcd_core(A, B);
  Poly g = G.shifted(mg) * cg;
  return {g, exact_div(a, g), exact_div(b, g)};
}

}  // namespace rdf
