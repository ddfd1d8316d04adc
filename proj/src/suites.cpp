#include "rdf/suites.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rdf/chainmap.hpp"
#include "rdf/dualform.hpp"
#include "rdf/gaussmanin.hpp"

namespace rdf {

namespace {

Report make(std::string name, bool pass, std::string detail) { return Report{std::move(name), pass, std::move(detail)}; }

template <typename F>
Report timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  Report r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string grade_str(Grade g) { return "(" + std::to_string(g.p1) + "," + std::to_string(g.p2) + ")"; }

PBWMonomial fmono(std::vector<int> fs) { return PBWMonomial{std::move(fs), {}, {}}; }
PBWMonomial emono(std::vector<int> es) { return PBWMonomial{{}, {}, std::move(es)}; }

}  // namespace

std::vector<RatFunc> sample_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<RatFunc> z;
  while (static_cast<int>(z.size()) < n) {
    const RatFunc p = RatFunc::fraction(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
    if (std::find(z.begin(), z.end(), p) == z.end()) z.push_back(p);
  }
  return z;
}

Config make_config(int n, const Assignment& fixed, const std::vector<std::string>& extra) {
  Config cfg = Config::symbolic(n, extra);
  for (const auto& [name, value] : fixed) {
    const RatFunc q(value);
    if (name == "kappa") {
      cfg.kappa = q;
      continue;
    }
    bool found = false;
    for (int i = 1; i <= n && !found; ++i) {
      if (name == "M" + std::to_string(i)) {
        cfg.M[static_cast<std::size_t>(i - 1)] = q;
        found = true;
      } else if (name == "z" + std::to_string(i)) {
        cfg.z[static_cast<std::size_t>(i - 1)] = q;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown parameter '" + name + "'");
  }
  cfg.validate();
  return cfg;
}

std::vector<Report> chain_map_suite(const Config& cfg, int bound) {
  const SiteConfig sc(cfg);
  std::vector<Report> out;
  for (const auto& e : function_basis(cfg.n, bound)) {
    Report r = timed([&] { return verify_chain_map(sc, DFunc::single(e)); });
    r.name = "chain-map " + to_string(e);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Report> identities_suite(int b_max) {
  std::vector<Report> out;
  for (int b = 1; b <= b_max; ++b) out.push_back(timed([&] { return verify_identity_a(b); }));
  for (int b = 2; b <= b_max; ++b) out.push_back(timed([&] { return verify_identity_b(b); }));
  return out;
}

std::vector<Report> singular_suite(int b_max, const std::optional<mpq_class>& kappa0) {
  std::vector<Report> out;
  auto check = [&](ResonancePoint::Line line, int b) {
    const ResonancePoint pt{line, b, kappa0};
    const bool is_x = line == ResonancePoint::Line::TypeA;
    const std::string name = std::string(is_x ? "X_" : "Y_") + std::to_string(b) + " on " + pt.label();
    if (!avoids_other_lines(pt)) return make(name, false, "basepoint lies on another Kac-Kazhdan line");
    const SingularParams p = params_at(pt);
    const VermaModule v(p.M, p.k);
    const VermaVector x = is_x ? compute_Xb(b, p) : compute_Yb(b, p);
    const VermaVector eps = is_x ? compute_Xb(b, p, SingularPath::EpsLimit) : compute_Yb(b, p, SingularPath::EpsLimit);
    const SingularReport s = is_singular(v, x);
    const Grade want = is_x ? Grade{b + 1, b} : Grade{b - 1, b};
    const RatFunc lead = leading_coefficient(v, x, is_x ? fmono({b}) : emono({b}));
    std::ostringstream detail;
    bool pass = s.singular() && x.grade == want && lead.is_one() && eps == x;
    if (!s.e_annihilates) detail << "e x = " << to_string(v.act(Gen::e(0), x), p.alphabet) << "; ";
    if (!s.ft_annihilates) detail << "fT x = " << to_string(v.act(Gen::f(1), x), p.alphabet) << "; ";
    if (!s.nonzero || !s.non_vacuum) detail << "vector is zero or vacuum; ";
    if (!(x.grade == want)) detail << "grade " << grade_str(x.grade) << "; ";
    if (!lead.is_one()) detail << "leading coefficient " << p.alphabet.format(lead) << "; ";
    if (!(eps == x)) detail << "eps path differs: " << to_string(eps - x, p.alphabet) << "; ";
    if (pass) detail << "grade " << grade_str(x.grade) << ", " << x.coeffs.size() << " terms";
    return make(name, pass, detail.str());
  };
  for (int b = 0; b <= b_max; ++b) out.push_back(timed([&] { return check(ResonancePoint::Line::TypeA, b); }));
  for (int b = 1; b <= b_max; ++b) out.push_back(timed([&] { return check(ResonancePoint::Line::TypeB, b); }));
  return out;
}

std::vector<Report> mff_suite() {
  std::vector<Report> out;
  {
    const SingularParams p = params_at({ResonancePoint::Line::TypeB, 1, std::nullopt});
    const VermaModule v(p.M, p.k);
    const VermaVector diff = compute_Yb(1, p) - mff_vector(MffCase::F21_a1, v);
    out.push_back(make("Y_1 = F21(1,1) v", diff.is_zero(), diff.is_zero() ? "0" : to_string(diff, p.alphabet)));
  }
  {
    const SingularParams p = params_at({ResonancePoint::Line::TypeB, 2, std::nullopt});
    const VermaModule v(p.M, p.k);
    const VermaVector y = compute_Yb(2, p);
    const VermaVector mff = mff_vector(MffCase::F21_a2, v);
    const bool pass = !y.is_zero() && !mff.is_zero() && proportional(y, mff);
    out.push_back(make("Y_2 ~ F21(1,2) v", pass,
                       pass ? "all 2x2 minors vanish" : "Y_2 = " + to_string(y, p.alphabet) + "; F21 = " + to_string(mff, p.alphabet)));
  }
  return out;
}

std::vector<Report> relations_suite(const Config& cfg, int b_max, RelationWeights w) {
  std::vector<Report> out;
  for (int b = 1; b <= b_max; ++b) {
    std::vector<RelationCase> cases{RelationCase::type_b(b)};
    for (int p = 1; p <= cfg.n; ++p) cases.push_back(RelationCase::type_a(b, p));
    for (const auto& c : cases) {
      out.push_back(timed([&] { return verify_resonance_relation(c, cfg, w).report; }));
    }
  }
  return out;
}

std::vector<Report> gauss_manin_suite(int n, int bound) {
  std::vector<Report> out;
  const Config cfg = Config::symbolic(n, {"t"});
  std::vector<Elem> elems;
  for (int i = 1; i <= n; ++i) {
    for (int b = 1; b <= bound; ++b) elems.push_back(Elem::pole(i, b));
  }
  for (int b = 0; b <= bound; ++b) elems.push_back(Elem::power(b));
  for (const auto& e : elems) out.push_back(timed([&] {
    const DForm w = DForm::single(e);
    const MixedForm2 closed = beta_wedge(cfg, w, BetaMode::Closed);
    const MixedForm2 direct = beta_wedge(cfg, w, BetaMode::Direct);
    std::ostringstream detail;
    for (const auto& [key, c] : direct.comps) {
      const RatFunc r = closed.coeff(key.first, key.second) - c;
      if (!r.is_zero()) detail << "(" << key.first << "," << key.second << "): " << cfg.format(r) << "; ";
    }
    for (const auto& [key, c] : closed.comps) {
      if (direct.coeff(key.first, key.second).is_zero()) detail << "(" << key.first << "," << key.second << "): " << cfg.format(c) << "; ";
    }
    const bool pass = closed == direct;
    return make("beta wedge " + to_string(e) + " n=" + std::to_string(n), pass, pass ? "0" : detail.str());
  }));
  Report flat = timed([] { return verify_flatness(Config::symbolic(2)); });
  flat.name = "flatness n=2";
  out.push_back(std::move(flat));
  const std::vector<std::vector<long>> weights{{-2, 5}, {-1, -3, 7}, {3, 1}};
  for (const auto& m : weights) {
    Config c = Config::symbolic(static_cast<int>(m.size()));
    std::string label = "restricted invariance M=";
    for (std::size_t i = 0; i < m.size(); ++i) {
      c.M[i] = RatFunc(m[i]);
      label += (i ? "," : "") + std::to_string(m[i]);
    }
    c.kappa = RatFunc(1);
    Report r = timed([&] { return verify_restricted_invariance(c); });
    r.name = label + " kappa=1";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Report> gram_suite(int total) {
  std::vector<Report> out;
  const Alphabet& alpha = universal_alphabet();
  {
    const auto d = gram_determinant({1, 1});
    const Poly expect = alpha.parse("2*M*(k - M)*(k + 2)").num();
    const bool pass = d.det == expect || d.det == -expect;
    out.push_back(make("gram det (1,1) = 2M(k-M)(k+2)", pass, alpha.format(d.det)));
  }
  for (int s = 0; s <= total; ++s) {
    for (int p1 = 0; p1 <= s; ++p1) out.push_back(timed([&] {
      const Grade g{p1, s - p1};
      const auto d = gram_determinant(g);
      std::string detail;
      for (const auto& f : d.factors) {
        if (!detail.empty()) detail += " ";
        detail += f.label + "^" + std::to_string(f.multiplicity);
      }
      if (!d.fully_matched()) detail += " residual " + alpha.format(d.residual);
      return make("gram det " + grade_str(g), d.fully_matched(), detail.empty() ? "constant" : detail);
    }));
  }
  return out;
}

std::vector<Report> l_minus_one_suite(int bound) {
  std::vector<Report> out;
  for (Letter x : {Letter::E, Letter::F, Letter::H}) {
    for (int i = -2; i <= 2; ++i) out.push_back(timed([&] { return l_minus1_commutator_check(x, i, bound); }));
  }
  const SiteConfig sc(Config::symbolic(2));
  const auto fx = GlobalSl2Func::single(Letter::F, Elem::pole(1, 1));
  const auto mixed = GlobalSl2Func::single(Letter::E, Elem::pole(2, 2)) + GlobalSl2Func::single(Letter::H, Elem::power(1));
  const std::vector<std::pair<GlobalSl2Func, TensorDual>> samples{
      {fx, TensorDual::vacuum(3)},
      {mixed, TensorDual::at_site(3, 1, fmono({0}), sc.config().m(2))},
  };
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (int i = 1; i <= 2; ++i) {
      Report r = timed([&] { return kz_leibniz_check(sc, samples[s].first, samples[s].second, i); });
      r.name = "KZ Leibniz sample " + std::to_string(s + 1) + " i=" + std::to_string(i);
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

class RandomRat {
 public:
  explicit RandomRat(unsigned seed) : rng_(seed) {}

  Poly poly() {
    std::vector<Poly::Term> terms;
    const int n = 1 + static_cast<int>(rng_() % 3);
    for (int i = 0; i < n; ++i) {
      Poly::Term t;
      for (int v = 0; v < 3; ++v) t.exps[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(rng_() % 3);
      t.coeff = static_cast<long>(rng_() % 7) - 3;
      terms.push_back(t);
    }
    return Poly::from_terms(terms);
  }

  RatFunc rat() {
    Poly d;
    while (d.is_zero()) d = poly();
    return RatFunc(poly(), d);
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// Coefficient of x^p1 y^p2 in prod over the lowering generators of 1/(1 - x^a y^b).
long generating_function_dim(int p1, int p2) {
  std::vector<std::vector<long>> series(static_cast<std::size_t>(p1 + 1), std::vector<long>(static_cast<std::size_t>(p2 + 1), 0));
  series[0][0] = 1;
  std::vector<std::pair<int, int>> degs;
  for (int i = 0; i <= p2; ++i) degs.emplace_back(i + 1, i);
  for (int j = 1; j <= p2; ++j) degs.emplace_back(j, j);
  for (int l = 1; l <= p2; ++l) degs.emplace_back(l - 1, l);
  for (auto [a, b] : degs) {
    if (a > p1 || b > p2) continue;
    for (int x = a; x <= p1; ++x) {
      for (int y = b; y <= p2; ++y) {
        series[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] +=
            series[static_cast<std::size_t>(x - a)][static_cast<std::size_t>(y - b)];
      }
    }
  }
  return series[static_cast<std::size_t>(p1)][static_cast<std::size_t>(p2)];
}

}  // namespace

std::vector<Report> kernel_suite(unsigned seed, int fuzz_trials) {
  std::vector<Report> out;
  const Alphabet alpha({"x", "y", "z"});
  RandomRat gen(seed);
  const int samples = 150;

  int failures = 0;
  std::string first;
  for (int i = 0; i < samples; ++i) {
    const RatFunc f = gen.rat();
    if (alpha.parse(alpha.format(f)) != f) {
      ++failures;
      if (first.empty()) first = alpha.format(f);
    }
    const RatFunc a = gen.rat();
    const RatFunc b = gen.rat();
    const RatFunc c = gen.rat();
    const RatFunc lhs = (a + b) * c;
    const RatFunc rhs = c * b + a * c;
    if (lhs.num() != rhs.num() || lhs.den() != rhs.den()) {
      ++failures;
      if (first.empty()) first = alpha.format(lhs) + " vs " + alpha.format(rhs);
    }
  }
  out.push_back(make("field canonical form", failures == 0, failures == 0 ? std::to_string(samples) + " samples" : first));

  failures = 0;
  first.clear();
  for (int i = 0; i < samples; ++i) {
    const RatFunc a = gen.rat();
    const RatFunc b = gen.rat();
    const RatFunc c = gen.rat();
    const bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                    a + RatFunc() == a && a * RatFunc(1) == a && (a - a).is_zero() &&
                    (a.is_zero() || (a * a.inverse()).is_one());
    if (!ok) {
      ++failures;
      if (first.empty()) first = alpha.format(a) + ", " + alpha.format(b) + ", " + alpha.format(c);
    }
  }
  out.push_back(make("field axioms", failures == 0, failures == 0 ? std::to_string(samples) + " samples" : first));

  std::string mismatch;
  for (int total = 0; total <= 8; ++total) {
    for (int p1 = 0; p1 <= total; ++p1) {
      const Grade g{p1, total - p1};
      const long have = static_cast<long>(component_basis(g).size());
      const long want = generating_function_dim(g.p1, g.p2);
      if (have != want) mismatch += grade_str(g) + ": " + std::to_string(have) + " vs " + std::to_string(want) + "; ";
    }
  }
  out.push_back(make("PBW dimensions p1+p2<=8", mismatch.empty(), mismatch.empty() ? "45 grades" : mismatch));

  const VermaModule v(universal_alphabet().var("M"), universal_alphabet().var("k"));
  const Letter letters[] = {Letter::E, Letter::F, Letter::H};
  auto& rng = gen.engine();
  auto random_gen = [&] {
    const Letter l = letters[rng() % 3];
    return Gen{l, static_cast<int>(rng() % 7) - 3};
  };
  failures = 0;
  first.clear();
  for (int trial = 0; trial < fuzz_trials; ++trial) {
    const Gen a = random_gen();
    const Gen b = random_gen();
    PBWMonomial m;
    for (;;) {
      const int total = static_cast<int>(rng() % 5);
      const int p1 = static_cast<int>(rng() % static_cast<unsigned>(total + 1));
      const auto& basis = component_basis({p1, total - p1});
      if (!basis.empty()) {
        m = basis[rng() % basis.size()];
        break;
      }
    }
    const VermaVector x = v.basis_vector(m);
    const VermaVector lhs = v.act(a, v.act(b, x)) - v.act(b, v.act(a, x));
    VermaVector rhs;
    for (const auto& t : bracket(a, b)) rhs += RatFunc(t.coeff) * v.act(t.gen, x);
    if (lhs != rhs) {
      ++failures;
      if (first.empty()) first = "[" + to_string(a) + ", " + to_string(b) + "] on " + to_string(m);
    }
  }
  out.push_back(make("commutator fuzz", failures == 0,
                     failures == 0 ? std::to_string(fuzz_trials) + " triples" : std::to_string(failures) + " failures, first " + first));
  return out;
}

}  // namespace rdf
