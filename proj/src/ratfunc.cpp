#include "rdf/ratfunc.hpp"

#include <vector>

namespace rdf {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  auto g = gcd_cofactors(num, den);
  num_ = std::move(g.cofactor_a);
  den_ = std::move(g.cofactor_b);
  normalize_sign();
}

RatFunc::RatFunc(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  num_ = Poly(c.get_num());
  den_ = Poly(c.get_den());
}

void RatFunc::normalize_sign() {
  if (den_.leading().coeff < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

mpq_class RatFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  mpq_class q(num_.constant_value(), den_.constant_value());
  q.canonicalize();
  return q;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DivisionByZero();
  RatFunc r(den_, num_, Reduced{});
  r.normalize_sign();
  return r;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
}

RatFunc RatFunc::derivative(int var) const {
  if (den_.is_constant()) return RatFunc(num_.derivative(var), den_);
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    if (n.is_zero()) return *this = RatFunc();
    auto g = gcd_cofactors(n, den_);
    num_ = std::move(g.cofactor_a);
    den_ = std::move(g.cofactor_b);
    normalize_sign();
    return *this;
  }
  auto g = gcd_cofactors(den_, o.den_);
  Poly n = num_ * g.cofactor_b + o.num_ * g.cofactor_a;
  if (n.is_zero()) return *this = RatFunc();
  if (g.gcd.is_one()) {
    num_ = std::move(n);
    den_ = den_ * o.den_;
  } else {
    auto h = gcd_cofactors(n, g.gcd);
    num_ = std::move(h.cofactor_a);
    den_ = g.cofactor_a * g.cofactor_b * h.cofactor_b;
  }
  normalize_sign();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  auto g1 = gcd_cofactors(num_, o.den_);
  auto g2 = gcd_cofactors(o.num_, den_);
  num_ = g1.cofactor_a * g2.cofactor_a;
  den_ = g2.cofactor_b * g1.cofactor_b;
  normalize_sign();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc arith(ArithOp op, const RatFunc& a, const RatFunc& b) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
    case ArithOp::Div:
      return a / b;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

RatFunc evaluate(const Poly& p, std::span<const RatFunc> values) {
  bool polynomial = true;
  for (const auto& v : values) polynomial = polynomial && v.is_polynomial();
  std::vector<std::vector<RatFunc>> powers(values.size());
  auto power = [&](std::size_t i, std::size_t e) -> const RatFunc& {
    auto& pw = powers[i];
    if (pw.empty()) pw.emplace_back(1);
    while (pw.size() <= e) pw.push_back(pw.back() * values[i]);
    return pw[e];
  };
  if (polynomial) {
    Poly acc;
    std::vector<Poly::Term> kept;
    for (const auto& t : p.terms()) {
      Poly term = Poly::monomial([&] {
        Exponents rest = t.exps;
        for (std::size_t i = 0; i < values.size() && i < kMaxSymbols; ++i) rest[i] = 0;
        return rest;
      }(), t.coeff);
      for (std::size_t i = 0; i < values.size() && i < kMaxSymbols; ++i) {
        if (t.exps[i] != 0) term *= power(i, t.exps[i]).num();
      }
      acc += term;
    }
    return RatFunc(std::move(acc));
  }
  RatFunc acc;
  for (const auto& t : p.terms()) {
    Exponents rest = t.exps;
    for (std::size_t i = 0; i < values.size() && i < kMaxSymbols; ++i) rest[i] = 0;
    RatFunc term(Poly::monomial(rest, t.coeff));
    for (std::size_t i = 0; i < values.size() && i < kMaxSymbols; ++i) {
      if (t.exps[i] != 0) term *= power(i, t.exps[i]);
    }
    acc += term;
  }
  return acc;
}

RatFunc substitute(const RatFunc& f, const std::map<int, RatFunc>& bindings) {
  if (bindings.empty()) return f;
  std::vector<RatFunc> values;
  for (int i = 0; i < static_cast<int>(kMaxSymbols); ++i) {
    auto it = bindings.find(i);
    values.push_back(it != bindings.end() ? it->second : RatFunc::variable(i));
  }
  RatFunc den = evaluate(f.den(), values);
  if (den.is_zero()) throw DenominatorVanishes();
  return evaluate(f.num(), values) / den;
}

RatFunc limit_eps(const RatFunc& f, int eps) {
  const int on = f.num().is_zero() ? 0 : f.num().min_degree(eps);
  const int od = f.den().min_degree(eps);
  if (f.num().is_zero()) return RatFunc();
  if (on < od) throw PoleAtZero();
  if (on > od) return RatFunc();
  Exponents shift{};
  shift[static_cast<std::size_t>(eps)] = static_cast<std::uint16_t>(on);
  return RatFunc(f.num().divided_by_monomial(shift).evaluate_at(eps, 0),
                 f.den().divided_by_monomial(shift).evaluate_at(eps, 0));
}

}  // namespace rdf
