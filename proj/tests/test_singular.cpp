#include <gtest/gtest.h>

#include <random>

#include "rdf/singular.hpp"

namespace rdf {
namespace {

RatFunc Q(long n, long d = 1) { return RatFunc::fraction(n, d); }
PBWMonomial Fm(std::vector<int> fs) { return PBWMonomial{std::move(fs), {}, {}}; }
PBWMonomial Em(std::vector<int> es) { return PBWMonomial{{}, {}, std::move(es)}; }

Config numeric_points(int n, unsigned seed) {
  Config cfg = Config::symbolic(n);
  std::mt19937 rng(seed);
  cfg.z.clear();
  while (static_cast<int>(cfg.z.size()) < n) {
    const RatFunc p = Q(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
    if (std::find(cfg.z.begin(), cfg.z.end(), p) == cfg.z.end()) cfg.z.push_back(p);
  }
  return cfg;
}

TEST(Singular, GenericDefinition) {
  const SingularParams p = generic_params();
  const VermaModule v(p.M, p.k);
  const RatFunc kappa = p.k + Q(2);
  for (int b = 0; b <= 2; ++b) {
    const VermaVector x = compute_Xb(b, p, SingularPath::Direct);
    EXPECT_EQ(x.grade, (Grade{b + 1, b}));
    EXPECT_EQ(shapovalov_map(v, x), DualVector::basis(Fm({b}), p.M + RatFunc(b) * kappa)) << b;
  }
  for (int b = 1; b <= 2; ++b) {
    const VermaVector y = compute_Yb(b, p, SingularPath::Direct);
    EXPECT_EQ(y.grade, (Grade{b - 1, b}));
    EXPECT_EQ(shapovalov_map(v, y), DualVector::basis(Em({b}), p.k - p.M + RatFunc(b - 1) * kappa)) << b;
  }
}

TEST(Singular, GenericPathsAgree) {
  const SingularParams p = generic_params();
  for (int b = 0; b <= 2; ++b) {
    EXPECT_EQ(compute_Xb(b, p, SingularPath::Direct), compute_Xb(b, p, SingularPath::EpsLimit)) << b;
  }
  for (int b = 1; b <= 2; ++b) {
    EXPECT_EQ(compute_Yb(b, p, SingularPath::Direct), compute_Yb(b, p, SingularPath::EpsLimit)) << b;
  }
}

// Oracle: Gram inversion by hand on (1,0) and (2,0): S(fv,fv) = M,
// S(f^2 v, f^2 v) = 2M(M - 1).
TEST(Singular, XOneGeneric) {
  const SingularParams p = generic_params();
  const VermaModule v(p.M, p.k);
  VermaVector expect = v.basis_vector(Fm({1}));
  expect -= (p.M * (p.M - Q(1))).inverse() * v.act(Gen::e(-1), v.basis_vector(Fm({0, 0})));
  expect -= p.M.inverse() * v.act(Gen::h(-1), v.basis_vector(Fm({0})));
  EXPECT_EQ(compute_Xb(1, p), expect);
}

TEST(Singular, YOneGeneric) {
  const SingularParams p = generic_params();
  const VermaModule v(p.M, p.k);
  EXPECT_EQ(compute_Yb(1, p), v.basis_vector(Em({1})));
}

TEST(Singular, XbOnTypeALines) {
  for (int b = 0; b <= 3; ++b) {
    const ResonancePoint pt{ResonancePoint::Line::TypeA, b, std::nullopt};
    const SingularParams p = params_at(pt);
    const VermaModule v(p.M, p.k);
    const VermaVector x = compute_Xb(b, p);
    const SingularReport r = is_singular(v, x);
    EXPECT_TRUE(r.singular()) << b << " " << to_string(x, p.alphabet);
    EXPECT_EQ(x.grade, (Grade{b + 1, b}));
    EXPECT_EQ(leading_coefficient(v, x, Fm({b})), Q(1));
  }
}

TEST(Singular, YbOnTypeBLines) {
  for (int b = 1; b <= 3; ++b) {
    const ResonancePoint pt{ResonancePoint::Line::TypeB, b, std::nullopt};
    const SingularParams p = params_at(pt);
    const VermaModule v(p.M, p.k);
    const VermaVector y = compute_Yb(b, p);
    const SingularReport r = is_singular(v, y);
    EXPECT_TRUE(r.singular()) << b << " " << to_string(y, p.alphabet);
    EXPECT_EQ(y.grade, (Grade{b - 1, b}));
    EXPECT_EQ(leading_coefficient(v, y, Em({b})), Q(1));
  }
}

TEST(Singular, EpsPathAgreesOnLines) {
  for (int b = 0; b <= 2; ++b) {
    const SingularParams p = params_at({ResonancePoint::Line::TypeA, b, std::nullopt});
    EXPECT_EQ(compute_Xb(b, p, SingularPath::Direct), compute_Xb(b, p, SingularPath::EpsLimit)) << b;
  }
  for (int b = 1; b <= 2; ++b) {
    const SingularParams p = params_at({ResonancePoint::Line::TypeB, b, std::nullopt});
    EXPECT_EQ(compute_Yb(b, p, SingularPath::Direct), compute_Yb(b, p, SingularPath::EpsLimit)) << b;
  }
}

TEST(Singular, GenericGramIsSingularOnTheLine) {
  const SingularParams p = params_at({ResonancePoint::Line::TypeA, 1, std::nullopt});
  const VermaModule v(p.M, p.k);
  EXPECT_THROW(shapovalov_inverse_apply(v, DualVector::basis(Fm({1}))), GramSingular);
}

TEST(Singular, NumericBasepoint) {
  const ResonancePoint pt{ResonancePoint::Line::TypeA, 2, mpq_class(7, 3)};
  ASSERT_TRUE(avoids_other_lines(pt));
  const SingularParams p = params_at(pt);
  const VermaVector x = compute_Xb(2, p);
  EXPECT_TRUE(is_singular(VermaModule(p.M, p.k), x).singular());

  const SingularParams sym = params_at({ResonancePoint::Line::TypeA, 2, std::nullopt});
  const VermaVector xs = compute_Xb(2, sym);
  VermaVector substituted{xs.grade, {}};
  for (const auto& [m, c] : xs.coeffs) substituted.add(m, substitute(c, {{0, Q(7, 3)}}));
  EXPECT_EQ(x, substituted);
}

TEST(Singular, BasepointOnTwoLines) {
  // kappa = 1 puts M = -2 on TypeA(2) and on B(2, 1).
  EXPECT_FALSE(avoids_other_lines({ResonancePoint::Line::TypeA, 2, mpq_class(1)}));
  EXPECT_FALSE(avoids_other_lines({ResonancePoint::Line::TypeB, 1, mpq_class(0)}));
  EXPECT_TRUE(avoids_other_lines({ResonancePoint::Line::TypeB, 1, std::nullopt}));
}

TEST(Singular, IsSingularExamples) {
  const VermaVector fv = VermaVector::basis(Fm({0}));
  EXPECT_TRUE(is_singular(VermaModule(Q(0), Q(5)), fv).singular());
  const SingularReport r = is_singular(VermaModule(Q(1), Q(5)), fv);
  EXPECT_FALSE(r.singular());
  EXPECT_FALSE(r.e_annihilates);
  EXPECT_FALSE(is_singular(VermaModule(Q(0), Q(5)), VermaVector::basis(PBWMonomial{})).singular());
  EXPECT_FALSE(is_singular(VermaModule(Q(0), Q(5)), VermaVector{}).singular());
}

TEST(Mff, ExampleOne) {
  const SingularParams p = params_at({ResonancePoint::Line::TypeB, 1, std::nullopt});
  const VermaModule v(p.M, p.k);
  EXPECT_EQ(mff_vector(MffCase::F21_a1, v), v.basis_vector(Em({1})));
  EXPECT_EQ(compute_Yb(1, p), mff_vector(MffCase::F21_a1, v));
  EXPECT_TRUE(is_singular(v, mff_vector(MffCase::F21_a1, v)).singular());
}

TEST(Mff, ExampleTwo) {
  const SingularParams p = params_at({ResonancePoint::Line::TypeB, 2, std::nullopt});
  const VermaModule v(p.M, p.k);
  const VermaVector mff = mff_vector(MffCase::F21_a2, v);
  EXPECT_EQ(mff.grade, (Grade{1, 2}));
  EXPECT_TRUE(is_singular(v, mff).singular()) << to_string(mff, p.alphabet);
  EXPECT_TRUE(proportional(compute_Yb(2, p), mff));
}

TEST(Mff, ProportionalityIsStrict) {
  const SingularParams p = generic_params();
  const VermaModule v(p.M, p.k);
  const VermaVector a = v.basis_vector(Fm({0, 0}));
  EXPECT_TRUE(proportional(a, p.M * a));
  EXPECT_FALSE(proportional(v.basis_vector(Fm({1})), v.act(Gen::h(-1), v.basis_vector(Fm({0})))));
  EXPECT_TRUE(proportional(a, VermaVector{}));
}

TEST(Relations, Compositions) {
  EXPECT_EQ(compositions(1), (std::vector<std::vector<int>>{{1}}));
  EXPECT_EQ(compositions(3), (std::vector<std::vector<int>>{{1, 1, 1}, {1, 2}, {2, 1}, {3}}));
  for (int b = 1; b <= 6; ++b) EXPECT_EQ(compositions(b).size(), std::size_t{1} << (b - 1));
}

TEST(Relations, Examples) {
  const Config cfg = Config::symbolic(3);
  const auto b1 = resonance_relation(RelationCase::type_b(1), cfg);
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(b1[static_cast<std::size_t>(j - 1)], cfg.zi(j));

  RatFunc zm;
  for (int j = 1; j <= 3; ++j) zm += cfg.zi(j) * cfg.m(j);
  const auto b2 = resonance_relation(RelationCase::type_b(2), cfg);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_EQ(b2[static_cast<std::size_t>(j - 1)], cfg.zi(j).pow(2) - zm * cfg.zi(j) / cfg.kappa);
  }

  const auto a1 = resonance_relation(RelationCase::type_a(1, 1), cfg);
  RatFunc s;
  for (int j = 2; j <= 3; ++j) {
    EXPECT_EQ(a1[static_cast<std::size_t>(j - 1)], (cfg.zi(j) - cfg.zi(1)).inverse());
    s += cfg.m(j) / (cfg.zi(j) - cfg.zi(1));
  }
  EXPECT_EQ(a1[0], s / cfg.kappa);
}

// Oracle: eliminating t^a dt (resp. the poles at z_p) one step at a time
// weights a composition by 1/(l_1 (l_1 + l_2) ... (l_1 + ... + l_m)).
std::vector<RatFunc> partial_sum_relation(const RelationCase& c, const Config& cfg) {
  const int n = cfg.n;
  std::vector<RatFunc> lambda(static_cast<std::size_t>(n));
  auto sum = [&](int l) {
    RatFunc s;
    for (int j = 1; j <= n; ++j) {
      if (c.type == RelationCase::Type::TypeB) {
        s += cfg.zi(j).pow(l) * cfg.m(j);
      } else if (j != c.p) {
        s += cfg.m(j) / (cfg.zi(j) - cfg.zi(c.p)).pow(l);
      }
    }
    return s;
  };
  auto weight = [&](const std::vector<int>& ls) {
    RatFunc w(1);
    int partial = 0;
    for (int l : ls) {
      partial += l;
      w *= -sum(l) / (RatFunc(partial) * cfg.kappa);
    }
    return w;
  };
  for (const auto& comp : compositions(c.b)) {
    const std::vector<int> tail(comp.begin() + 1, comp.end());
    for (int j = 1; j <= n; ++j) {
      if (c.type == RelationCase::Type::TypeB) {
        lambda[static_cast<std::size_t>(j - 1)] += weight(tail) * cfg.zi(j).pow(comp[0]);
      } else if (j != c.p) {
        lambda[static_cast<std::size_t>(j - 1)] += weight(tail) / (cfg.zi(j) - cfg.zi(c.p)).pow(comp[0]);
      }
    }
    if (c.type == RelationCase::Type::TypeA) lambda[static_cast<std::size_t>(c.p - 1)] -= weight(comp);
  }
  return lambda;
}

TEST(Relations, ExponentialWeightsMatchStepwiseElimination) {
  const Config cfg = Config::symbolic(3);
  for (int b = 1; b <= 4; ++b) {
    for (const auto& c : {RelationCase::type_b(b), RelationCase::type_a(b, 2)}) {
      EXPECT_EQ(resonance_relation(c, cfg, RelationWeights::Exponential), partial_sum_relation(c, cfg)) << c.label();
    }
  }
}

TEST(Relations, DisplayedAndExponentialAgreeUpToTwoParts) {
  const Config cfg = Config::symbolic(3);
  for (const auto& c : {RelationCase::type_b(1), RelationCase::type_b(2), RelationCase::type_a(1, 1)}) {
    EXPECT_EQ(resonance_relation(c, cfg), resonance_relation(c, cfg, RelationWeights::Exponential)) << c.label();
  }
  EXPECT_NE(resonance_relation(RelationCase::type_b(3), cfg),
            resonance_relation(RelationCase::type_b(3), cfg, RelationWeights::Exponential));
  EXPECT_NE(resonance_relation(RelationCase::type_a(2, 1), cfg),
            resonance_relation(RelationCase::type_a(2, 1), cfg, RelationWeights::Exponential));
}

TEST(Relations, WitnessesExist) {
  for (int n = 2; n <= 3; ++n) {
    for (unsigned seed = 1; seed <= 3; ++seed) {
      const Config cfg = numeric_points(n, seed * 31u + static_cast<unsigned>(n));
      for (int b = 1; b <= 4; ++b) {
        for (const auto& c : {RelationCase::type_b(b), RelationCase::type_a(b, 1), RelationCase::type_a(b, n)}) {
          const RelationCheck r = verify_resonance_relation(c, cfg, RelationWeights::Exponential);
          EXPECT_TRUE(r.report.pass) << r.report.name << ": " << r.report.detail;
        }
      }
    }
  }
}

// The displayed weights give exact relations only while no part repeats.
TEST(Relations, DisplayedWeightsAtThreePoints) {
  const Config cfg = numeric_points(3, 17);
  for (const auto& c : {RelationCase::type_b(1), RelationCase::type_b(2), RelationCase::type_a(1, 1),
                        RelationCase::type_a(1, 3)}) {
    const RelationCheck r = verify_resonance_relation(c, cfg);
    EXPECT_TRUE(r.report.pass) << r.report.name << ": " << r.report.detail;
  }
  for (const auto& c : {RelationCase::type_b(3), RelationCase::type_a(2, 1), RelationCase::type_a(3, 2)}) {
    EXPECT_FALSE(verify_resonance_relation(c, cfg).report.pass) << c.label();
  }
}

TEST(Relations, TwoPointsAreDegenerate) {
  // With n = 2 every combination of omega_1, omega_2 is exact on a resonance.
  const Config cfg = numeric_points(2, 9);
  const Config res = on_resonance(RelationCase::type_b(3), cfg);
  EXPECT_TRUE(verify_relation(res, {Q(5), Q(7)}, 3).has_value());
}

TEST(Relations, RandomCombinationIsNotExact) {
  const Config cfg = numeric_points(3, 21);
  for (const auto& c : {RelationCase::type_b(2), RelationCase::type_a(2, 1)}) {
    const Config res = on_resonance(c, cfg);
    EXPECT_FALSE(verify_relation(res, {Q(5), Q(7), Q(-3)}, 4).has_value()) << c.label();
  }
}

TEST(Relations, OffResonanceHasNoWitness) {
  const Config cfg = numeric_points(2, 5);
  EXPECT_FALSE(verify_relation(cfg, resonance_relation(RelationCase::type_b(2), cfg), 3).has_value());
  EXPECT_FALSE(verify_relation(cfg, resonance_relation(RelationCase::type_a(2, 1), cfg), 3).has_value());
}

}  // namespace
}  // namespace rdf
