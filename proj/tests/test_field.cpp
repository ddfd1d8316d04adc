#include <gtest/gtest.h>

#include <random>

#include "rdf/alphabet.hpp"
#include "rdf/linalg.hpp"

namespace rdf {
namespace {

const Alphabet kAlpha({"kappa", "M1", "M", "k", "eps"});

RatFunc P(std::string_view s) { return kAlpha.parse(s); }

class RandomRat {
 public:
  explicit RandomRat(unsigned seed) : rng_(seed) {}

  Poly poly(int max_terms = 3, int vars = 3, int max_exp = 2) {
    std::vector<Poly::Term> terms;
    int n = 1 + static_cast<int>(rng_() % static_cast<unsigned>(max_terms));
    for (int i = 0; i < n; ++i) {
      Poly::Term t;
      for (int v = 0; v < vars; ++v) t.exps[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(rng_() % (max_exp + 1));
      t.coeff = static_cast<long>(rng_() % 7) - 3;
      terms.push_back(t);
    }
    return Poly::from_terms(terms);
  }

  RatFunc rat(int max_terms = 3, int max_exp = 2) {
    Poly d;
    while (d.is_zero()) d = poly(max_terms, 3, max_exp);
    return RatFunc(poly(max_terms, 3, max_exp), d);
  }

 private:
  std::mt19937 rng_;
};

TEST(Field, ArithExamples) {
  EXPECT_EQ(arith(ArithOp::Add, P("1/kappa"), P("1/kappa")), P("2/kappa"));
  EXPECT_TRUE(arith(ArithOp::Mul, P("M1/kappa"), P("kappa/M1")).is_one());
  EXPECT_EQ(arith(ArithOp::Sub, P("(kappa^2-1)/(kappa-1)"), P("kappa")), RatFunc(1));
  EXPECT_THROW(arith(ArithOp::Div, P("kappa"), RatFunc()), DivisionByZero);
}

TEST(Field, CanonicalDenominator) {
  RatFunc f = P("(2*kappa + 2)/(-4*kappa - 4)");
  EXPECT_EQ(kAlpha.format(f), "-1/2");
  RatFunc g = P("M/(-k)");
  EXPECT_GT(g.den().leading().coeff, 0);
  EXPECT_EQ(g, P("-M/k"));
}

TEST(Field, SubstituteExamples) {
  const int m1 = kAlpha.symbol("M1").index;
  const int kap = kAlpha.symbol("kappa").index;
  for (long b = 0; b < 4; ++b) {
    RatFunc f = P("M1") + RatFunc(b) * P("kappa");
    EXPECT_TRUE(substitute(f, {{m1, RatFunc(-b) * P("kappa")}}).is_zero());
  }
  const int m = kAlpha.symbol("M").index;
  EXPECT_THROW(substitute(P("1/(k-M)"), {{m, P("k")}}), DenominatorVanishes);
  // The weight at infinity is expanded before any substitution.
  RatFunc m_inf = P("M1 + M - 2");
  EXPECT_EQ(substitute(m_inf, {}), P("M1 + M - 2"));
  // Bindings are applied simultaneously.
  EXPECT_EQ(substitute(P("M1^2/kappa"), {{m1, P("kappa")}, {kap, P("2")}}), P("kappa^2/2"));
}

TEST(Field, LimitEps) {
  const int eps = kAlpha.symbol("eps").index;
  EXPECT_TRUE(limit_eps(P("eps/eps"), eps).is_one());
  EXPECT_EQ(limit_eps(P("(M*eps + eps^2)/eps"), eps), P("M"));
  EXPECT_THROW(limit_eps(P("1/eps"), eps), PoleAtZero);
  EXPECT_TRUE(limit_eps(P("eps*M/(k+eps)"), eps).is_zero());
  EXPECT_EQ(limit_eps(P("(M + eps)/(k - eps)"), eps), P("M/k"));
}

TEST(Field, FormatParseRoundTrip) {
  RandomRat gen(11);
  for (int i = 0; i < 200; ++i) {
    RatFunc f = gen.rat();
    EXPECT_EQ(kAlpha.parse(kAlpha.format(f)), f) << kAlpha.format(f);
  }
  EXPECT_EQ(kAlpha.format(P("(M^2 - k)/(2*k + 4)")), "(M^2 - k)/(2*k + 4)");
  EXPECT_THROW(kAlpha.parse("M +"), ParseError);
  EXPECT_THROW(kAlpha.parse("q"), ParseError);
}

TEST(Field, CanonicalFormIndependentOfOperationOrder) {
  RandomRat gen(7);
  for (int i = 0; i < 150; ++i) {
    RatFunc a = gen.rat();
    RatFunc b = gen.rat();
    RatFunc c = gen.rat();
    RatFunc f = (a + b) * c;
    RatFunc g = c * b + a * c;
    EXPECT_TRUE((f - g).num().is_zero());
    EXPECT_EQ(f.num(), g.num());
    EXPECT_EQ(f.den(), g.den());
  }
}

TEST(Field, FieldAxioms) {
  RandomRat gen(3);
  for (int i = 0; i < 150; ++i) {
    RatFunc a = gen.rat();
    RatFunc b = gen.rat();
    RatFunc c = gen.rat();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(Field, SubstituteCommutesWithArith) {
  RandomRat gen(5);
  const int m1 = kAlpha.symbol("M1").index;
  for (int i = 0; i < 100; ++i) {
    RatFunc a = gen.rat();
    RatFunc b = gen.rat();
    std::map<int, RatFunc> bind{{m1, gen.rat()}};
    for (ArithOp op : {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div}) {
      try {
        RatFunc lhs = substitute(arith(op, a, b), bind);
        RatFunc rhs = arith(op, substitute(a, bind), substitute(b, bind));
        EXPECT_EQ(lhs, rhs);
      } catch (const DenominatorVanishes&) {
      } catch (const DivisionByZero&) {
      }
    }
  }
}

TEST(Poly, GcdRecoversCommonFactor) {
  RandomRat gen(19);
  for (int i = 0; i < 120; ++i) {
    Poly g = gen.poly(3, 4, 2);
    Poly a = gen.poly(3, 4, 2);
    Poly b = gen.poly(3, 4, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    auto res = gcd_cofactors(a * g, b * g);
    EXPECT_TRUE(divide_exact(res.gcd, g).has_value());
    EXPECT_EQ(res.gcd * res.cofactor_a, a * g);
    EXPECT_EQ(res.gcd * res.cofactor_b, b * g);
    // Cofactors are coprime.
    EXPECT_TRUE(gcd(res.cofactor_a, res.cofactor_b).is_constant());
  }
}

TEST(Poly, GcdOfLinearProducts) {
  const Alphabet many({"t", "z1", "z2", "z3", "a", "b", "c", "d"});
  auto v = [&](const char* s) { return many.parse(s).num(); };
  Poly x = v("(t - z1)*(z2 - z3)^2*(a + b*c)");
  Poly y = v("(t - z1)^2*(z2 - z3)*(d - a)");
  EXPECT_EQ(gcd(x, y), v("(t - z1)*(z2 - z3)"));
  EXPECT_EQ(gcd(v("6*a^2 - 6"), v("4*a + 4")), v("2*a + 2"));
}

TEST(Linalg, SolveExamples) {
  RatMatrix id = RatMatrix::Identity(2, 2);
  RatVector b(2);
  b << P("kappa"), P("M");
  auto s = solve_linear(id, b);
  ASSERT_EQ(s.status, LinearSolution::Status::Solved);
  EXPECT_EQ(s.x(0), P("kappa"));
  EXPECT_EQ(s.x(1), P("M"));

  RatMatrix a1(1, 1);
  a1 << P("M");
  RatVector b1(1);
  b1 << P("M^2");
  EXPECT_EQ(solve_linear(a1, b1).x(0), P("M"));
}

TEST(Linalg, SolveGramOneOneAgainstCofactorInverse) {
  RatMatrix a(2, 2);
  a << P("2*k"), P("-2*(k-M)"), P("-2*(k-M)"), P("(M+2)*(k-M)");
  RatVector b(2);
  b << RatFunc(1), RatFunc(0);
  auto s = solve_linear(a, b);
  ASSERT_EQ(s.status, LinearSolution::Status::Solved);
  // Oracle: first column of adj(A) / det(A).
  RatFunc det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  EXPECT_EQ(det, P("2*M*(k-M)*(k+2)"));
  EXPECT_EQ(s.x(0), a(1, 1) / det);
  EXPECT_EQ(s.x(1), -a(1, 0) / det);
  EXPECT_EQ(s.x(0), P("(M+2)/(2*M*(k+2))"));
}

TEST(Linalg, SingularAndInconsistent) {
  RatMatrix a(2, 2);
  a << P("M"), P("k"), P("2*M"), P("2*k");
  RatVector b(2);
  b << RatFunc(1), RatFunc(2);
  auto s = solve_linear(a, b);
  EXPECT_EQ(s.status, LinearSolution::Status::Singular);
  EXPECT_EQ(s.rank, 1);

  RatMatrix r(3, 2);
  r << RatFunc(1), RatFunc(0), RatFunc(0), RatFunc(1), RatFunc(1), RatFunc(1);
  RatVector rb(3);
  rb << P("M"), P("k"), P("M + k + 1");
  EXPECT_EQ(solve_linear(r, rb).status, LinearSolution::Status::NoSolution);
  rb(2) = P("M + k");
  auto ok = solve_linear(r, rb);
  ASSERT_EQ(ok.status, LinearSolution::Status::Solved);
  EXPECT_EQ(ok.x(1), P("k"));
}

TEST(Linalg, RandomSolutionsSatisfySystem) {
  RandomRat gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    RatMatrix a(n, n);
    RatVector b(n);
    for (int i = 0; i < n; ++i) {
      b(i) = gen.rat(2, 1);
      for (int j = 0; j < n; ++j) a(i, j) = gen.rat(2, 1);
    }
    auto s = solve_linear(a, b);
    if (s.status != LinearSolution::Status::Solved) continue;
    for (int i = 0; i < n; ++i) {
      RatFunc acc;
      for (int j = 0; j < n; ++j) acc += a(i, j) * s.x(j);
      EXPECT_EQ(acc, b(i));
    }
  }
}

TEST(Linalg, EliminationStrategiesAgree) {
  RandomRat gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 2 + trial % 3;
    const int cols = 2 + (trial / 3) % 3;
    RatMatrix a(rows, cols);
    RatVector b(rows);
    for (int i = 0; i < rows; ++i) {
      b(i) = gen.rat(2, 1);
      for (int j = 0; j < cols; ++j) a(i, j) = trial % 2 == 0 && (i + j) % 2 == 1 ? RatFunc() : gen.rat(2, 1);
    }
    if (trial % 5 == 0) a.row(rows - 1) = a.row(0) * P("M");
    const auto s1 = solve_linear(a, b);
    const auto s2 = solve_linear_fraction_free(a, b);
    EXPECT_EQ(s1.status, s2.status);
    EXPECT_EQ(s1.rank, s2.rank);
    if (s1.status != LinearSolution::Status::Solved) continue;
    RatVector r1 = a * s1.x;
    RatVector r2 = a * s2.x;
    for (int i = 0; i < rows; ++i) {
      EXPECT_EQ(r1(i), b(i));
      EXPECT_EQ(r2(i), b(i));
    }
    if (rows >= cols && rank(a) == cols) EXPECT_EQ(s1.x, s2.x);
  }
}

TEST(Linalg, BareissDeterminant) {
  PolyMatrix m(3, 3);
  auto p = [](const char* s) { return kAlpha.parse(s).num(); };
  m << p("M"), p("1"), p("0"), p("k"), p("M"), p("1"), p("0"), p("k"), p("M");
  EXPECT_EQ(determinant(m), p("M^3 - 2*M*k"));
}

}  // namespace
}  // namespace rdf
