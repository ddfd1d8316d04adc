#include "rdf/singular.hpp"

#include <algorithm>
#include <array>

namespace rdf {

std::string ResonancePoint::label() const {
  std::string out = (line == Line::TypeA ? "TypeA(" : "TypeB(") + std::to_string(b) + ")";
  if (kappa0) out += " at kappa = " + kappa0->get_str();
  return out;
}

SingularParams params_at(const ResonancePoint& pt) {
  SingularParams p;
  p.alphabet = Alphabet({"kappa"});
  const RatFunc kappa = pt.kappa0 ? RatFunc(*pt.kappa0) : p.alphabet.var("kappa");
  p.k = kappa - RatFunc(2);
  p.M = pt.line == ResonancePoint::Line::TypeA ? RatFunc(-pt.b) * kappa : RatFunc(pt.b) * kappa - RatFunc(2);
  return p;
}

SingularParams generic_params() {
  SingularParams p;
  p.alphabet = universal_alphabet();
  p.M = p.alphabet.var("M");
  p.k = p.alphabet.var("k");
  return p;
}

bool avoids_other_lines(const ResonancePoint& pt) {
  if (!pt.kappa0) return true;
  if (*pt.kappa0 == 0) return false;
  const SingularParams p = params_at(pt);
  const std::array<RatFunc, 2> at{p.M, p.k};
  for (const auto& line : kac_kazhdan_lines(3, pt.b + 2)) {
    if (line.type == KacKazhdanLine::Type::KappaZero) continue;
    const bool own = line.l == 1 && ((pt.line == ResonancePoint::Line::TypeA && line.type == KacKazhdanLine::Type::A &&
                                      line.a == pt.b + 1) ||
                                     (pt.line == ResonancePoint::Line::TypeB && line.type == KacKazhdanLine::Type::B &&
                                      line.a == pt.b));
    if (own) continue;
    if (evaluate(line.form(), at).is_zero()) return false;
  }
  return true;
}

namespace {

PBWMonomial fmono(std::vector<int> fs) { return PBWMonomial{std::move(fs), {}, {}}; }
PBWMonomial emono(std::vector<int> es) { return PBWMonomial{{}, {}, std::move(es)}; }

VermaVector inverse_of_basis(const VermaModule& v, const PBWMonomial& m) {
  return shapovalov_inverse_apply(v, DualVector::basis(m));
}

VermaVector xb_direct(int b, const VermaModule& v) {
  VermaVector x = v.basis_vector(fmono({b}));
  for (int l = 1; l <= b; ++l) {
    for (int j = 0; 2 * j <= b - l; ++j) {
      x -= RatFunc(2) * v.act(Gen::e(-l), inverse_of_basis(v, fmono({b - l - j, j})));
    }
    x -= v.act(Gen::h(-l), inverse_of_basis(v, fmono({b - l})));
  }
  return x;
}

VermaVector yb_direct(int b, const VermaModule& v) {
  VermaVector y = v.basis_vector(emono({b}));
  for (int l = 0; l <= b - 2; ++l) {
    for (int j = 1; 2 * j <= b - l; ++j) {
      y -= RatFunc(2) * v.act(Gen::f(-l), inverse_of_basis(v, emono({b - l - j, j})));
    }
    y += v.act(Gen::h(-l - 1), inverse_of_basis(v, emono({b - l - 1})));
  }
  return y;
}

// S^-1(scale(M) * (m)*) with M shifted by eps, then eps -> 0.
template <typename Scale>
VermaVector eps_limit(const SingularParams& p, const PBWMonomial& m, Scale scale) {
  std::vector<std::string> names = p.alphabet.names();
  if (std::find(names.begin(), names.end(), "eps") != names.end()) {
    throw std::invalid_argument("alphabet already uses eps");
  }
  names.push_back("eps");
  const Alphabet alpha(names);
  const int eps = alpha.symbol("eps").index;
  const RatFunc shifted = p.M + alpha.var("eps");
  const VermaModule v(shifted, p.k);
  const VermaVector x = shapovalov_inverse_apply(v, DualVector::basis(m, scale(shifted)));
  VermaVector out{x.grade, {}};
  for (const auto& [mono, c] : x.coeffs) out.add(mono, limit_eps(c, eps));
  return out;
}

}  // namespace

VermaVector compute_Xb(int b, const SingularParams& p, SingularPath path) {
  if (b < 0) throw std::invalid_argument("X_b needs b >= 0");
  const RatFunc kappa = p.k + RatFunc(2);
  auto eps = [&] {
    return eps_limit(p, fmono({b}), [&](const RatFunc& m) { return m + RatFunc(b) * kappa; });
  };
  if (path == SingularPath::EpsLimit) return eps();
  try {
    return xb_direct(b, VermaModule(p.M, p.k));
  } catch (const GramSingular&) {
    if (path == SingularPath::Direct) throw;
  }
  return eps();
}

VermaVector compute_Yb(int b, const SingularParams& p, SingularPath path) {
  if (b < 1) throw std::invalid_argument("Y_b needs b >= 1");
  const RatFunc kappa = p.k + RatFunc(2);
  auto eps = [&] {
    return eps_limit(p, emono({b}), [&](const RatFunc& m) { return p.k - m + RatFunc(b - 1) * kappa; });
  };
  if (path == SingularPath::EpsLimit) return eps();
  try {
    return yb_direct(b, VermaModule(p.M, p.k));
  } catch (const GramSingular&) {
    if (path == SingularPath::Direct) throw;
  }
  return eps();
}

SingularReport is_singular(const VermaModule& v, const VermaVector& x) {
  SingularReport r;
  r.vector = x;
  r.nonzero = !x.is_zero();
  r.non_vacuum = r.nonzero && !(x.grade == Grade{0, 0});
  r.e_annihilates = v.act(Gen::e(0), x).is_zero();
  r.ft_annihilates = v.act(Gen::f(1), x).is_zero();
  return r;
}

RatFunc leading_coefficient(const VermaModule& v, const VermaVector& x, const PBWMonomial& m) {
  if (x.is_zero()) return RatFunc();
  const Ordering o = ordering_for(x.grade) == Ordering::FHE ? Ordering::EHF : Ordering::FHE;
  const auto coords = coordinates_in_order(v, x, o);
  auto it = coords.find(m);
  return it == coords.end() ? RatFunc() : it->second;
}

VermaVector mff_vector(MffCase c, const VermaModule& v) {
  if (c == MffCase::F21_a1) return v.basis_vector(emono({1}));
  const RatFunc kappa = v.kappa();
  const std::vector<Gen> w1{Gen::f(0), Gen::e(-1), Gen::e(-1)};
  const std::vector<Gen> w2{Gen::h(-1), Gen::e(-1)};
  VermaVector out = v.act_word(w1, v.vacuum());
  out += (RatFunc(1) + kappa) * v.act_word(w2, v.vacuum());
  out -= (RatFunc(1) + kappa) * kappa * v.basis_vector(emono({2}));
  return out;
}

bool proportional(const VermaVector& x, const VermaVector& y) {
  if (x.is_zero() || y.is_zero()) return true;
  if (!(x.grade == y.grade)) return false;
  std::vector<PBWMonomial> keys;
  for (const auto& [m, c] : x.coeffs) keys.push_back(m);
  for (const auto& [m, c] : y.coeffs) {
    if (!x.coeffs.count(m)) keys.push_back(m);
  }
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) {
      if (x.coeff(keys[a]) * y.coeff(keys[b]) != x.coeff(keys[b]) * y.coeff(keys[a])) return false;
    }
  }
  return true;
}

std::string RelationCase::label() const {
  if (type == Type::TypeB) return "TypeB(" + std::to_string(b) + ")";
  return "TypeA(" + std::to_string(b) + ", p=" + std::to_string(p) + ")";
}

std::vector<std::vector<int>> compositions(int b) {
  std::vector<std::vector<int>> out;
  if (b <= 0) return out;
  for (int first = 1; first <= b; ++first) {
    if (first == b) {
      out.push_back({b});
      continue;
    }
    for (auto rest : compositions(b - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

std::vector<RatFunc> resonance_relation(const RelationCase& c, const Config& cfg, RelationWeights weights) {
  const int n = cfg.n;
  std::vector<RatFunc> lambda(static_cast<std::size_t>(n));
  const RatFunc minus_kappa_inv = -cfg.kappa.inverse();
  auto scale = [&](int m) {
    RatFunc s = minus_kappa_inv.pow(m);
    if (weights == RelationWeights::Exponential) {
      for (int i = 2; i <= m; ++i) s *= RatFunc::fraction(1, i);
    }
    return s;
  };
  if (c.type == RelationCase::Type::TypeB) {
    auto power_sum = [&](int l) {
      RatFunc s;
      for (int j = 1; j <= n; ++j) s += cfg.zi(j).pow(l) * cfg.m(j);
      return s * RatFunc::fraction(1, l);
    };
    for (const auto& comp : compositions(c.b)) {
      const int m = static_cast<int>(comp.size()) - 1;
      RatFunc w = scale(m);
      for (int i = 1; i <= m; ++i) w *= power_sum(comp[static_cast<std::size_t>(i)]);
      for (int j = 1; j <= n; ++j) lambda[static_cast<std::size_t>(j - 1)] += w * cfg.zi(j).pow(comp[0]);
    }
    return lambda;
  }
  const int p = c.p;
  if (p < 1 || p > n) throw std::out_of_range("TypeA site out of range");
  auto pole_sum = [&](int l) {
    RatFunc s;
    for (int j = 1; j <= n; ++j) {
      if (j != p) s += cfg.m(j) / (cfg.zi(j) - cfg.zi(p)).pow(l);
    }
    return s * RatFunc::fraction(1, l);
  };
  for (const auto& comp : compositions(c.b)) {
    const int m = static_cast<int>(comp.size()) - 1;
    RatFunc w = scale(m);
    for (int i = 1; i <= m; ++i) w *= pole_sum(comp[static_cast<std::size_t>(i)]);
    for (int j = 1; j <= n; ++j) {
      if (j != p) lambda[static_cast<std::size_t>(j - 1)] += w / (cfg.zi(j) - cfg.zi(p)).pow(comp[0]);
    }
    // The omega_p sum runs over compositions l_1 + ... + l_m = b, m >= 1.
    RatFunc u = scale(m + 1);
    for (int l : comp) u *= pole_sum(l);
    lambda[static_cast<std::size_t>(p - 1)] -= u;
  }
  return lambda;
}

Config on_resonance(const RelationCase& c, const Config& cfg) {
  Config out = cfg;
  if (c.type == RelationCase::Type::TypeB) {
    RatFunc rest;
    for (int j = 1; j < cfg.n; ++j) rest += cfg.m(j);
    out.M[static_cast<std::size_t>(cfg.n - 1)] = RatFunc(c.b) * cfg.kappa - rest;
  } else {
    out.M.at(static_cast<std::size_t>(c.p - 1)) = RatFunc(-c.b) * cfg.kappa;
  }
  return out;
}

RelationCheck verify_resonance_relation(const RelationCase& c, const Config& cfg, RelationWeights weights) {
  const Config res = on_resonance(c, cfg);
  RelationCheck out;
  out.report.name = "relation " + c.label() + " n=" + std::to_string(cfg.n);
  out.lambda = resonance_relation(c, res, weights);
  for (int bound = c.b; bound <= c.b + 1 && !out.witness; ++bound) out.witness = verify_relation(res, out.lambda, bound);
  if (!out.witness) {
    out.report.detail = "no witness";
    return out;
  }
  const bool exact = twisted_d(res, *out.witness) == log_combination(res, out.lambda);
  const bool nontrivial = std::any_of(out.lambda.begin(), out.lambda.end(), [](const RatFunc& x) { return !x.is_zero(); });
  out.report.pass = exact && nontrivial;
  out.report.detail = "witness " + to_string(*out.witness, res);
  if (!nontrivial) out.report.detail += " (trivial relation)";
  return out;
}

}  // namespace rdf
