#include <gtest/gtest.h>

#include <random>

#include "rdf/derham.hpp"
#include "rdf/linalg.hpp"

namespace rdf {
namespace {

RatFunc Q(long n, long d = 1) { return RatFunc::fraction(n, d); }

Config numeric(std::vector<RatFunc> m, std::vector<RatFunc> z, RatFunc kappa, std::vector<std::string> extra = {}) {
  Config cfg = Config::symbolic(static_cast<int>(m.size()), extra);
  cfg.M = std::move(m);
  cfg.z = std::move(z);
  cfg.kappa = std::move(kappa);
  cfg.validate();
  return cfg;
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}
  long small(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<unsigned>(hi - lo + 1)); }
  RatFunc rational() { return Q(small(-9, 9), small(1, 5)); }
  Elem elem(int n, int max_order) {
    if (small(0, 2) == 0) return Elem::power(static_cast<int>(small(0, max_order)));
    return Elem::pole(static_cast<int>(small(1, n)), static_cast<int>(small(1, max_order)));
  }
  template <typename S>
  S sum(int n, int terms, int max_order, const std::vector<RatFunc>& coeffs) {
    S s;
    for (int i = 0; i < terms; ++i) s.add(elem(n, max_order), coeffs[rng_() % coeffs.size()]);
    return s;
  }
  std::vector<RatFunc> distinct_points(int n) {
    std::vector<RatFunc> z;
    while (static_cast<int>(z.size()) < n) {
      RatFunc p = rational();
      if (std::find(z.begin(), z.end(), p) == z.end()) z.push_back(p);
    }
    return z;
  }

 private:
  std::mt19937 rng_;
};

TEST(Derham, TwistedDExamples) {
  for (int n = 1; n <= 3; ++n) {
    const Config cfg = Config::symbolic(n);
    DForm expect;
    for (int i = 1; i <= n; ++i) expect.add(Elem::pole(i, 1), -cfg.m(i) / cfg.kappa);
    EXPECT_EQ(twisted_d(cfg, DFunc::single(Elem::power(0))), expect);

    DForm t_expect;
    t_expect.add(Elem::power(0), (cfg.kappa - cfg.m_sum()) / cfg.kappa);
    for (int j = 1; j <= n; ++j) t_expect.add(Elem::pole(j, 1), -cfg.m(j) * cfg.zi(j) / cfg.kappa);
    EXPECT_EQ(twisted_d(cfg, DFunc::single(Elem::power(1))), t_expect);
  }
  const Config one = Config::symbolic(1);
  EXPECT_EQ(twisted_d(one, DFunc::single(Elem::pole(1, 1))),
            DForm::single(Elem::pole(1, 2), -(one.m(1) + one.kappa) / one.kappa));
}

// Oracle: kappa f' + kappa alpha f computed as a rational function of t.
TEST(Derham, TwistedDMatchesDirectDerivative) {
  Gen gen(5);
  for (int n = 1; n <= 3; ++n) {
    const Config cfg = Config::symbolic(n, {"t"});
    const int t = cfg.alphabet.symbol("t").index;
    const RatFunc tv = cfg.alphabet.var("t");
    for (int trial = 0; trial < 12; ++trial) {
      const DFunc f = gen.sum<DFunc>(n, 3, 4, {Q(1), Q(-2), Q(3, 2), cfg.m(1), cfg.kappa});
      const RatFunc fv = as_rational(cfg, f);
      RatFunc direct = fv.derivative(t);
      for (int j = 1; j <= n; ++j) direct -= cfg.m(j) / cfg.kappa / (tv - cfg.zi(j)) * fv;
      EXPECT_EQ(as_rational(cfg, twisted_d(cfg, f)), direct) << to_string(f, cfg);
    }
  }
}

TEST(Derham, Linearity) {
  Gen gen(8);
  const Config cfg = Config::symbolic(2);
  for (int trial = 0; trial < 30; ++trial) {
    const DFunc f = gen.sum<DFunc>(2, 3, 3, {Q(1), Q(2), cfg.m(2)});
    const DFunc g = gen.sum<DFunc>(2, 3, 3, {Q(-1), cfg.zi(1)});
    const RatFunc a = gen.rational() + cfg.kappa;
    EXPECT_EQ(twisted_d(cfg, a * f + g), a * twisted_d(cfg, f) + twisted_d(cfg, g));
  }
}

TEST(Derham, LogForms) {
  for (int n = 1; n <= 3; ++n) {
    const Config cfg = Config::symbolic(n);
    EXPECT_EQ(log_form(cfg, 1), DForm::single(Elem::pole(1, 1), cfg.m(1)));
    DForm s = cfg.kappa * twisted_d(cfg, DFunc::single(Elem::power(0)));
    for (int i = 1; i <= n; ++i) s += log_form(cfg, i);
    EXPECT_TRUE(s.is_zero());
  }
  EXPECT_THROW(log_form(Config::symbolic(2), 3), std::out_of_range);
}

TEST(Derham, ResonanceProfileExamples) {
  auto p = resonance_profile(numeric({Q(-2)}, {Q(0)}, Q(1)));
  EXPECT_EQ(p.a[0], 2);
  EXPECT_EQ(p.count, 1);
  p = resonance_profile(numeric({Q(1, 3)}, {Q(0)}, Q(1)));
  EXPECT_FALSE(p.a[0].has_value());
  EXPECT_FALSE(p.a[1].has_value());
  EXPECT_EQ(p.count, 0);
  p = resonance_profile(numeric({Q(1), Q(1)}, {Q(0), Q(1)}, Q(1)));
  EXPECT_EQ(p.a[2], 2);
  EXPECT_EQ(p.count, 1);
  EXPECT_THROW(resonance_profile(Config::symbolic(1)), std::invalid_argument);
  EXPECT_THROW(numeric({Q(1), Q(1)}, {Q(3), Q(3)}, Q(1)), std::invalid_argument);
}

TEST(Derham, RestrictedCheckExamples) {
  // a_1 = 2, a_2 = inf, a_3 = 3 with kappa = 1.
  const Config cfg = numeric({Q(-2), Q(5)}, {Q(0), Q(1)}, Q(1));
  for (int i = 1; i <= 2; ++i) EXPECT_TRUE(restricted_check(cfg, log_form(cfg, i)));
  EXPECT_TRUE(restricted_check(cfg, DForm::single(Elem::pole(1, 2))));
  EXPECT_FALSE(restricted_check(cfg, DForm::single(Elem::pole(1, 3))));
  EXPECT_TRUE(restricted_check(cfg, DForm::single(Elem::pole(2, 7))));
  // t^{a-1} dt is the first form excluded at infinity.
  EXPECT_TRUE(restricted_check(cfg, DForm::single(Elem::power(1))));
  EXPECT_FALSE(restricted_check(cfg, DForm::single(Elem::power(2))));
  EXPECT_TRUE(restricted_check(cfg, DFunc::single(Elem::power(3))));
  EXPECT_FALSE(restricted_check(cfg, DFunc::single(Elem::power(4))));
  const Config generic = numeric({Q(1, 3), Q(2, 7)}, {Q(0), Q(1)}, Q(1));
  EXPECT_TRUE(restricted_check(generic, DForm::single(Elem::pole(1, 9))));
  EXPECT_TRUE(restricted_check(generic, DForm::single(Elem::power(9))));
}

TEST(Derham, RestrictedSubcomplex) {
  Gen gen(13);
  const std::vector<std::vector<RatFunc>> weights{
      {Q(-2), Q(5)}, {Q(-1), Q(-3)}, {Q(3), Q(1)}, {Q(-2), Q(1, 2), Q(9, 2)}, {Q(0), Q(2)}};
  for (const auto& m : weights) {
    const int n = static_cast<int>(m.size());
    const Config cfg = numeric(m, gen.distinct_points(n), Q(1));
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
      const DFunc f = gen.sum<DFunc>(n, 3, 4, {Q(1), Q(-3), Q(2, 5)});
      if (!restricted_check(cfg, f)) continue;
      ++checked;
      EXPECT_TRUE(restricted_check(cfg, twisted_d(cfg, f))) << to_string(f, cfg);
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(Derham, RelationExamples) {
  Gen gen(21);
  for (int n = 1; n <= 3; ++n) {
    Config cfg = Config::symbolic(n);
    cfg.z = gen.distinct_points(n);
    auto w = verify_relation(cfg, std::vector<RatFunc>(static_cast<std::size_t>(n), Q(1)), 1);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, DFunc::single(Elem::power(0), -cfg.kappa));
  }
  for (int n = 2; n <= 3; ++n) {
    Config cfg = Config::symbolic(n);
    cfg.z = gen.distinct_points(n);
    // M^{n+1} = -2 + kappa.
    cfg.M.back() = cfg.kappa - (cfg.m_sum() - cfg.M.back());
    auto w = verify_relation(cfg, cfg.z, 2);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, DFunc::single(Elem::power(1), -cfg.kappa));

    // M^{n+1} = -2 + 2 kappa.
    Config c2 = Config::symbolic(n);
    c2.z = gen.distinct_points(n);
    c2.M.back() = RatFunc(2) * c2.kappa - (c2.m_sum() - c2.M.back());
    RatFunc zm;
    for (int k = 1; k <= n; ++k) zm += c2.zi(k) * c2.m(k);
    std::vector<RatFunc> lambda;
    for (int j = 1; j <= n; ++j) lambda.push_back(c2.zi(j) * c2.zi(j) - zm / c2.kappa * c2.zi(j));
    EXPECT_TRUE(verify_relation(c2, lambda, 2).has_value());
    // Without resonance the same combination is not exact.
    Config generic = Config::symbolic(n);
    generic.z = c2.z;
    RatFunc gzm;
    for (int k = 1; k <= n; ++k) gzm += generic.zi(k) * generic.m(k);
    std::vector<RatFunc> glambda;
    for (int j = 1; j <= n; ++j) glambda.push_back(generic.zi(j) * generic.zi(j) - gzm / generic.kappa * generic.zi(j));
    EXPECT_FALSE(verify_relation(generic, glambda, 3).has_value());
  }
}

TEST(Derham, ReduceToLogExamples) {
  const Config cfg = Config::symbolic(2);
  auto r = reduce_to_log(cfg, log_form(cfg, 1));
  EXPECT_EQ(r.c, (std::vector<RatFunc>{Q(1), Q(0)}));
  EXPECT_TRUE(r.g.is_zero());

  r = reduce_to_log(cfg, DForm::single(Elem::power(0)));
  const RatFunc den = cfg.kappa - cfg.m_sum();
  EXPECT_EQ(r.c, (std::vector<RatFunc>{cfg.zi(1) / den, cfg.zi(2) / den}));
  EXPECT_EQ(r.g, DFunc::single(Elem::power(1), cfg.kappa / den));

  Config res = cfg;
  res.M[0] = -res.kappa;
  try {
    reduce_to_log(res, DForm::single(Elem::pole(1, 2)));
    FAIL() << "expected an obstruction";
  } catch (const ResonanceObstruction& e) {
    EXPECT_EQ(e.site, 1);
    EXPECT_EQ(e.order, 2);
  }
}

TEST(Derham, ReduceToLogIdentity) {
  Gen gen(34);
  for (int n = 1; n <= 3; ++n) {
    const Config cfg = Config::symbolic(n);
    for (int trial = 0; trial < 10; ++trial) {
      const DForm w = gen.sum<DForm>(n, 3, 3, {Q(1), Q(-1, 2), cfg.zi(1), cfg.m(n)});
      const LogReduction r = reduce_to_log(cfg, w);
      DForm back = twisted_d(cfg, r.g) + log_combination(cfg, r.c);
      EXPECT_EQ(back, w) << to_string(w, cfg);
    }
  }
}

TEST(Derham, ExactFormsReduceToRelations) {
  Gen gen(55);
  for (int n = 2; n <= 3; ++n) {
    Config cfg = Config::symbolic(n);
    cfg.z = gen.distinct_points(n);
    cfg.kappa = Q(7, 3);
    for (int trial = 0; trial < 6; ++trial) {
      const DFunc f = gen.sum<DFunc>(n, 4, 3, {Q(1), Q(2), Q(-5, 3)});
      const LogReduction r = reduce_to_log(cfg, twisted_d(cfg, f));
      EXPECT_TRUE(verify_relation(cfg, r.c, 4).has_value());
    }
  }
}

TEST(Derham, DimensionCount) {
  Gen gen(89);
  for (int n = 1; n <= 3; ++n) {
    const Config cfg = numeric({Q(1, 3), Q(2, 5), Q(-3, 7)}, gen.distinct_points(3), Q(5, 11));
    Config c = cfg;
    c.n = n;
    c.M.resize(static_cast<std::size_t>(n));
    c.z.resize(static_cast<std::size_t>(n));
    for (int bound = 1; bound <= 4; ++bound) {
      const auto basis = function_basis(n, bound);
      std::map<Elem, Eigen::Index> rows;
      for (int b = 0; b < bound; ++b) rows.try_emplace(Elem::power(b), 0);
      for (int i = 1; i <= n; ++i) {
        for (int b = 1; b <= bound + 1; ++b) rows.try_emplace(Elem::pole(i, b), 0);
      }
      Eigen::Index r = 0;
      for (auto& [e, idx] : rows) idx = r++;
      RatMatrix a = RatMatrix::Constant(r, static_cast<Eigen::Index>(basis.size()), RatFunc());
      for (std::size_t col = 0; col < basis.size(); ++col) {
        for (const auto& [e, v] : twisted_d(c, DFunc::single(basis[col])).terms) {
          a(rows.at(e), static_cast<Eigen::Index>(col)) = v;
        }
      }
      EXPECT_EQ(rank(a), static_cast<Eigen::Index>(basis.size()));
      EXPECT_EQ(r - rank(a), n - 1);
    }
  }
}

}  // namespace
}  // namespace rdf
