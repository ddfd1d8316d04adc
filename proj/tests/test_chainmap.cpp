#include <gtest/gtest.h>

#include <random>

#include "rdf/chainmap.hpp"

namespace rdf {
namespace {

RatFunc Q(long n, long d = 1) { return RatFunc::fraction(n, d); }

// Symbolic kappa and M^i, random distinct rational points.
Config numeric_points(int n, unsigned seed, std::vector<std::string> extra = {}) {
  Config cfg = Config::symbolic(n, extra);
  std::mt19937 rng(seed);
  cfg.z.clear();
  while (static_cast<int>(cfg.z.size()) < n) {
    const RatFunc p = Q(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
    if (std::find(cfg.z.begin(), cfg.z.end(), p) == cfg.z.end()) cfg.z.push_back(p);
  }
  return cfg;
}

PBWMonomial F(std::vector<int> fs) { return PBWMonomial{std::move(fs), {}, {}}; }
PBWMonomial E(std::vector<int> es) { return PBWMonomial{{}, {}, std::move(es)}; }

TEST(Laurent, OwnPoleAndInfinity) {
  const Config cfg = Config::symbolic(2);
  const Laurent own = laurent_coeffs(cfg, DFunc::single(Elem::pole(1, 1)), 1, 3);
  EXPECT_EQ(own.lowest, -1);
  EXPECT_EQ(own.at(-1), Q(1));
  for (int m = 0; m <= 3; ++m) EXPECT_TRUE(own.at(m).is_zero());

  const Laurent inf = laurent_coeffs(cfg, DFunc::single(Elem::power(3)), 3, 2);
  EXPECT_EQ(inf.lowest, -3);
  EXPECT_EQ(inf.at(-3), Q(1));
  for (int m = -2; m <= 2; ++m) EXPECT_TRUE(inf.at(m).is_zero());
}

// Oracle: (sum_{m <= N} c_m u^m)(u + d)^b agrees with 1 up to u^N.
TEST(Laurent, GeometricSeriesMultipliesBack) {
  const Config cfg = Config::symbolic(2);
  const RatFunc d = cfg.zi(2) - cfg.zi(1);
  for (int b = 1; b <= 3; ++b) {
    const int N = 5;
    const Laurent l = laurent_coeffs(cfg, DFunc::single(Elem::pole(1, b)), 2, N);
    std::vector<RatFunc> prod(static_cast<std::size_t>(N + 1));
    for (int m = 0; m <= N; ++m) {
      for (int r = 0; r <= b && r <= m; ++r) {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(r));
        prod[static_cast<std::size_t>(m)] += l.at(m - r) * RatFunc(Poly(bin)) * d.pow(b - r);
      }
    }
    EXPECT_EQ(prod[0], Q(1));
    for (int m = 1; m <= N; ++m) EXPECT_TRUE(prod[static_cast<std::size_t>(m)].is_zero()) << b << " " << m;
  }
}

TEST(Laurent, PolesExpandAtInfinity) {
  const Config cfg = Config::symbolic(1);
  // 1/(t - z) = s + z s^2 + z^2 s^3 + ...
  const Laurent l = laurent_coeffs(cfg, DFunc::single(Elem::pole(1, 1)), 2, 4);
  EXPECT_EQ(l.lowest, 0);
  EXPECT_TRUE(l.at(0).is_zero());
  EXPECT_EQ(l.at(1), Q(1));
  EXPECT_EQ(l.at(2), cfg.zi(1));
  EXPECT_EQ(l.at(4), cfg.zi(1).pow(3));
}

TEST(Multiply, MatchesRationalProduct) {
  const Config cfg = Config::symbolic(2, {"t"});
  std::vector<Elem> elems;
  for (int b = 0; b <= 2; ++b) elems.push_back(Elem::power(b));
  for (int i = 1; i <= 2; ++i) {
    for (int b = 1; b <= 2; ++b) elems.push_back(Elem::pole(i, b));
  }
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      const DFunc x = DFunc::single(a, Q(2) + cfg.m(1));
      const DFunc y = DFunc::single(b, cfg.kappa);
      EXPECT_EQ(as_rational(cfg, multiply(cfg, x, y)), as_rational(cfg, x) * as_rational(cfg, y))
          << to_string(a) << " " << to_string(b);
    }
  }
}

TEST(MuAct, ConstantF) {
  for (int n = 1; n <= 3; ++n) {
    const SiteConfig sc(Config::symbolic(n));
    const Config& cfg = sc.config();
    TensorDual expect;
    for (int i = 1; i <= n; ++i) expect += TensorDual::at_site(n + 1, i, F({0}), cfg.m(i));
    const auto one = GlobalSl2Func::single(Letter::F, Elem::power(0));
    EXPECT_EQ(mu_act(sc, one, TensorDual::vacuum(n + 1)), expect);
  }
}

TEST(MuAct, LinearF) {
  for (int n = 1; n <= 3; ++n) {
    const SiteConfig sc(Config::symbolic(n));
    const Config& cfg = sc.config();
    TensorDual expect;
    for (int i = 1; i <= n; ++i) expect += TensorDual::at_site(n + 1, i, F({0}), cfg.m(i) * cfg.zi(i));
    expect += TensorDual::at_site(n + 1, n + 1, E({1}), sc.k() - cfg.m_inf());
    const auto ft = GlobalSl2Func::single(Letter::F, Elem::power(1));
    EXPECT_EQ(mu_act(sc, ft, TensorDual::vacuum(n + 1)), expect);
  }
}

TEST(MuAct, ZeroInputs) {
  const SiteConfig sc(Config::symbolic(2));
  EXPECT_TRUE(mu_act(sc, GlobalSl2Func::single(Letter::E, Elem::pole(1, 2)), TensorDual{}).is_zero());
  EXPECT_TRUE(mu_act(sc, GlobalSl2Func{}, TensorDual::vacuum(3)).is_zero());
}

TEST(MuAct, TruncationBound) {
  const SiteConfig sc(Config::symbolic(2), 1);
  const auto a = GlobalSl2Func::single(Letter::F, Elem::pole(1, 3));
  EXPECT_THROW(mu_act(sc, a, TensorDual::vacuum(3)), TruncationTooSmall);
  const SiteConfig roomy(Config::symbolic(2), 4);
  EXPECT_EQ(mu_act(roomy, a, TensorDual::vacuum(3)), mu_act(SiteConfig(Config::symbolic(2)), a, TensorDual::vacuum(3)));
}

TEST(Eta, Examples) {
  const SiteConfig sc(Config::symbolic(2));
  const Config& cfg = sc.config();
  EXPECT_EQ(eta1(sc, DForm::single(Elem::pole(2, 1))), TensorDual::at_site(3, 2, F({0}), -cfg.kappa));
  EXPECT_EQ(eta1(sc, DForm::single(Elem::power(0))), TensorDual::at_site(3, 3, E({1}), cfg.kappa));
  EXPECT_TRUE(eta1(sc, DForm{}).is_zero());
  EXPECT_TRUE(eta0(sc, DFunc{}).is_zero());

  Chain1 one;
  one.add(Letter::F, Elem::power(0), TensorKey(3), Q(1));
  EXPECT_EQ(eta0(sc, DFunc::single(Elem::power(0))), one);

  Chain1 pole;
  pole.add(Letter::F, Elem::pole(1, 1), TensorKey(3), Q(1));
  pole.add(Letter::E, Elem::pole(1, 1), TensorKey{F({0, 0}), {}, {}}, Q(-2));
  pole.add(Letter::H, Elem::pole(1, 1), TensorKey{F({0}), {}, {}}, Q(-1));
  EXPECT_EQ(eta0(sc, DFunc::single(Elem::pole(1, 1))), pole);
}

TEST(ChainMap, WorkedExamples) {
  for (int n = 1; n <= 3; ++n) {
    const SiteConfig sc(Config::symbolic(n));
    for (const auto& e : {Elem::power(0), Elem::power(1), Elem::power(2), Elem::pole(1, 1)}) {
      const Report r = verify_chain_map(sc, DFunc::single(e));
      EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
    }
  }
}

TEST(ChainMap, AllElementaryFunctions) {
  for (int n = 1; n <= 3; ++n) {
    const SiteConfig sc(numeric_points(n, 100u + static_cast<unsigned>(n)));
    for (const auto& e : function_basis(n, 4)) {
      const Report r = verify_chain_map(sc, DFunc::single(e));
      EXPECT_TRUE(r.pass) << n << " " << r.name << ": " << r.detail;
    }
  }
}

TEST(ChainMap, SymbolicPoints) {
  const SiteConfig sc(Config::symbolic(2));
  for (const auto& e : function_basis(2, 3)) {
    const Report r = verify_chain_map(sc, DFunc::single(e));
    EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
  }
}

TEST(ChainMap, Linearity) {
  const SiteConfig sc(numeric_points(2, 7));
  const Config& cfg = sc.config();
  DFunc f;
  f.add(Elem::pole(1, 2), cfg.m(1));
  f.add(Elem::power(3), Q(3, 2));
  f.add(Elem::pole(2, 1), cfg.kappa);
  const Report r = verify_chain_map(sc, f);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Eta, Injective) {
  EXPECT_TRUE(eta_injectivity_check(SiteConfig(Config::symbolic(1)), 1).pass);
  const Report r = eta_injectivity_check(SiteConfig(numeric_points(2, 3)), 4);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(MuAct, CentralResiduesCancel) {
  const SiteConfig sc(numeric_points(2, 11));
  const auto a = GlobalSl2Func::single(Letter::E, Elem::pole(1, 2));
  const auto b = GlobalSl2Func::single(Letter::F, Elem::pole(1, 1)) + GlobalSl2Func::single(Letter::F, Elem::power(2));
  EXPECT_TRUE(central_residue(sc, a, b).is_zero());
  const auto h1 = GlobalSl2Func::single(Letter::H, Elem::pole(2, 1));
  const auto h2 = GlobalSl2Func::single(Letter::H, Elem::power(1));
  EXPECT_TRUE(central_residue(sc, h1, h2).is_zero());
}

TEST(MuAct, LieAction) {
  std::mt19937 rng(2024);
  const SiteConfig sc(numeric_points(2, 13));
  const Letter letters[] = {Letter::E, Letter::F, Letter::H};
  auto random_func = [&] {
    GlobalSl2Func a;
    for (int t = 0; t < 2; ++t) {
      const Letter x = letters[rng() % 3];
      const int kind = static_cast<int>(rng() % 3);
      const int order = static_cast<int>(rng() % 2) + 1;
      const Elem e = kind == 0 ? Elem::power(order) : Elem::pole(kind, order);
      a += GlobalSl2Func::single(x, e, Q(static_cast<long>(rng() % 5) + 1));
    }
    return a;
  };
  std::vector<TensorDual> targets{TensorDual::vacuum(3), TensorDual::at_site(3, 1, F({0})),
                                  TensorDual::at_site(3, 3, E({1}))};
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_func();
    const auto b = random_func();
    for (const auto& w : targets) {
      const Report r = lie_action_check(sc, a, b, w);
      EXPECT_TRUE(r.pass) << to_string(a, sc.config()) << " / " << to_string(b, sc.config()) << ": " << r.detail;
    }
  }
}

TEST(LMinusOne, CommutatorIdentity) {
  for (Letter x : {Letter::E, Letter::F, Letter::H}) {
    for (int i = -2; i <= 2; ++i) {
      const Report r = l_minus1_commutator_check(x, i, 3);
      EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
    }
  }
}

TEST(LMinusOne, Examples) {
  const VermaModule v(RatFunc::variable(0), RatFunc::variable(1));
  auto comm = [&](const Gen& g, const VermaVector& b) { return l_minus1(v, v.act(g, b)) - v.act(g, l_minus1(v, b)); };
  const VermaVector vac = v.vacuum();
  const VermaVector fv = v.basis_vector(F({0}));
  EXPECT_TRUE(comm(Gen::h(0), fv).is_zero());
  EXPECT_EQ(comm(Gen::e(1), vac), RatFunc(-1) * v.act(Gen::e(0), vac));
  EXPECT_EQ(comm(Gen::e(1), fv), RatFunc(-1) * v.act(Gen::e(0), fv));
  EXPECT_EQ(comm(Gen::f(-1), vac), v.act(Gen::f(-2), vac));
  // L_-1 v = (1/kappa)(e/T)(f v) + (1/kappa)(1/2)(h/T)(M v) up to ordering.
  EXPECT_FALSE(l_minus1(v, vac).is_zero());
}

TEST(LMinusOne, DualCommutator) {
  const VermaModule v(RatFunc::variable(0), RatFunc::variable(1));
  for (const auto& m : {PBWMonomial{}, F({0}), F({1}), E({1})}) {
    const DualVector phi = DualVector::basis(m);
    for (const Gen g : {Gen::e(1), Gen::f(-1), Gen::h(-2), Gen::f(0)}) {
      const DualVector lhs = l_minus1(v, contragradient_act(v, g, phi)) - contragradient_act(v, g, l_minus1(v, phi));
      const DualVector rhs = RatFunc(-g.tpow) * contragradient_act(v, Gen{g.letter, g.tpow - 1}, phi);
      EXPECT_EQ(lhs, rhs) << to_string(m) << " " << to_string(g);
    }
  }
}

TEST(KZ, Leibniz) {
  const SiteConfig sc(Config::symbolic(2));
  const auto x = GlobalSl2Func::single(Letter::F, Elem::pole(1, 1));
  const TensorDual g = TensorDual::vacuum(3);
  for (int i = 1; i <= 2; ++i) {
    const Report r = kz_leibniz_check(sc, x, g, i);
    EXPECT_TRUE(r.pass) << r.detail;
  }
  const auto y = GlobalSl2Func::single(Letter::E, Elem::pole(2, 2)) + GlobalSl2Func::single(Letter::H, Elem::power(1));
  const TensorDual g2 = TensorDual::at_site(3, 1, F({0}), sc.config().m(2));
  for (int i = 1; i <= 2; ++i) {
    const Report r = kz_leibniz_check(sc, y, g2, i);
    EXPECT_TRUE(r.pass) << r.detail;
  }
}

TEST(KZ, NumericPointsRejected) {
  const SiteConfig sc(numeric_points(2, 1));
  EXPECT_THROW(dz(sc.config(), TensorDual::vacuum(3), 1), std::invalid_argument);
}

}  // namespace
}  // namespace rdf
