#include "rdf/derham.hpp"

#include <algorithm>

#include "rdf/linalg.hpp"

namespace rdf {

Config Config::symbolic(int n, const std::vector<std::string>& extra) {
  if (n < 1) throw std::invalid_argument("need at least one site");
  std::vector<std::string> names{"kappa"};
  for (int i = 1; i <= n; ++i) names.push_back("M" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  names.insert(names.end(), extra.begin(), extra.end());
  if (names.size() > kMaxSymbols) throw std::invalid_argument("too many symbols for one session");
  Config cfg;
  cfg.n = n;
  cfg.alphabet = Alphabet(names);
  cfg.kappa = cfg.alphabet.var("kappa");
  for (int i = 1; i <= n; ++i) {
    cfg.M.push_back(cfg.alphabet.var("M" + std::to_string(i)));
    cfg.z.push_back(cfg.alphabet.var("z" + std::to_string(i)));
  }
  return cfg;
}

RatFunc Config::m_sum() const {
  RatFunc s;
  for (const auto& m : M) s += m;
  return s;
}

void Config::validate() const {
  if (n < 1 || M.size() != static_cast<std::size_t>(n) || z.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("config arity mismatch");
  }
  if (kappa.is_zero()) throw std::invalid_argument("kappa must be nonzero");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]).is_zero()) {
        throw std::invalid_argument("points z_i must be pairwise distinct");
      }
    }
  }
}

std::string to_string(const Elem& e) {
  if (e.kind == Elem::Kind::PoleAt) return "PoleAt(" + std::to_string(e.site) + "," + std::to_string(e.order) + ")";
  return "PolyPow(" + std::to_string(e.order) + ")";
}

namespace {

template <typename Tag>
std::string format_sum(const ElemSum<Tag>& s, const Config& cfg) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : s.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + cfg.format(c) + ")*" + to_string(e);
  }
  return out;
}

RatFunc elem_value(const Config& cfg, const Elem& e) {
  const RatFunc t = cfg.alphabet.var("t");
  if (e.kind == Elem::Kind::PolyPow) return t.pow(e.order);
  return (t - cfg.zi(e.site)).pow(e.order).inverse();
}

// kappa * d~ of one elementary function.
DForm kappa_d(const Config& cfg, const Elem& e) {
  DForm out;
  const int b = e.order;
  if (e.kind == Elem::Kind::PoleAt) {
    const int i = e.site;
    out.add(Elem::pole(i, b + 1), -(cfg.m(i) + RatFunc(b) * cfg.kappa));
    for (int j = 1; j <= cfg.n; ++j) {
      if (j == i) continue;
      const RatFunc inv = (cfg.zi(j) - cfg.zi(i)).inverse();
      RatFunc p = RatFunc(1);
      for (int k = 1; k <= b; ++k) {
        p *= inv;
        out.add(Elem::pole(i, b + 1 - k), cfg.m(j) * p);
      }
      out.add(Elem::pole(j, 1), -(cfg.m(j) * p));
    }
    return out;
  }
  if (b >= 1) out.add(Elem::power(b - 1), RatFunc(b) * cfg.kappa - cfg.m_sum());
  for (int j = 1; j <= cfg.n; ++j) {
    RatFunc zk = RatFunc(1);
    for (int k = 1; k <= b - 1; ++k) {
      zk *= cfg.zi(j);
      out.add(Elem::power(b - 1 - k), -(cfg.m(j) * zk));
    }
    out.add(Elem::pole(j, 1), -(cfg.m(j) * cfg.zi(j).pow(b)));
  }
  return out;
}

std::optional<long> integer_value(const RatFunc& q) {
  if (!q.is_constant()) return std::nullopt;
  const mpq_class v = q.constant_value();
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
  return v.get_num().get_si();
}

}  // namespace

std::string to_string(const DFunc& f, const Config& cfg) { return format_sum(f, cfg); }
std::string to_string(const DForm& w, const Config& cfg) { return format_sum(w, cfg); }

RatFunc as_rational(const Config& cfg, const DFunc& f) {
  RatFunc out;
  for (const auto& [e, c] : f.terms) out += c * elem_value(cfg, e);
  return out;
}

RatFunc as_rational(const Config& cfg, const DForm& w) {
  RatFunc out;
  for (const auto& [e, c] : w.terms) out += c * elem_value(cfg, e);
  return out;
}

DForm twisted_d(const Config& cfg, const DFunc& f) {
  DForm out;
  for (const auto& [e, c] : f.terms) out += c * kappa_d(cfg, e);
  return cfg.kappa.inverse() * out;
}

DForm log_form(const Config& cfg, int i) {
  if (i < 1 || i > cfg.n) throw std::out_of_range("site index out of range");
  return DForm::single(Elem::pole(i, 1), cfg.m(i));
}

DForm log_combination(const Config& cfg, const std::vector<RatFunc>& lambda) {
  if (lambda.size() != static_cast<std::size_t>(cfg.n)) throw std::invalid_argument("one coefficient per site");
  DForm out;
  for (int i = 1; i <= cfg.n; ++i) out += lambda[static_cast<std::size_t>(i - 1)] * log_form(cfg, i);
  return out;
}

ResonanceProfile resonance_profile(const Config& cfg) {
  if (!cfg.kappa.is_constant() || cfg.kappa.is_zero()) throw std::invalid_argument("numeric nonzero kappa required");
  ResonanceProfile p;
  for (int i = 1; i <= cfg.n; ++i) {
    if (!cfg.m(i).is_constant()) throw std::invalid_argument("numeric M required");
    auto a = integer_value(-cfg.m(i) / cfg.kappa);
    p.a.push_back(a && *a >= 0 ? a : std::nullopt);
  }
  auto a = integer_value(cfg.m_sum() / cfg.kappa);
  p.a.push_back(a && *a > 0 ? a : std::nullopt);
  p.count = static_cast<int>(std::count_if(p.a.begin(), p.a.end(), [](const auto& x) { return x.has_value(); }));
  return p;
}

namespace {

template <typename Tag>
bool restricted_impl(const Config& cfg, const ElemSum<Tag>& s, int inf_shift) {
  const ResonanceProfile p = resonance_profile(cfg);
  std::vector<int> finite(static_cast<std::size_t>(cfg.n) + 1, 0);
  int at_inf = 0;
  RatFunc residue;
  for (const auto& [e, c] : s.terms) {
    if (e.kind == Elem::Kind::PoleAt) {
      finite[static_cast<std::size_t>(e.site)] = std::max(finite[static_cast<std::size_t>(e.site)], e.order);
      if (e.order == 1) residue += c;
    } else {
      at_inf = std::max(at_inf, e.order + inf_shift);
    }
  }
  // A form with simple poles at the z_i has a simple pole at infinity unless
  // the residues cancel.
  if (inf_shift > 0 && !residue.is_zero()) at_inf = std::max(at_inf, 1);
  for (int i = 1; i <= cfg.n; ++i) {
    const auto& a = p.a[static_cast<std::size_t>(i - 1)];
    if (a && finite[static_cast<std::size_t>(i)] > *a) return false;
  }
  const auto& a = p.a.back();
  return !(a && at_inf > *a);
}

}  // namespace

bool restricted_check(const Config& cfg, const DForm& w) { return restricted_impl(cfg, w, 2); }

bool restricted_check(const Config& cfg, const DFunc& f) { return restricted_impl(cfg, f, 0); }

std::vector<Elem> function_basis(int n, int bound) {
  std::vector<Elem> out;
  for (int b = 0; b <= bound; ++b) out.push_back(Elem::power(b));
  for (int i = 1; i <= n; ++i) {
    for (int b = 1; b <= bound; ++b) out.push_back(Elem::pole(i, b));
  }
  return out;
}

std::optional<DFunc> verify_relation(const Config& cfg, const std::vector<RatFunc>& lambda, int bound) {
  const DForm target = log_combination(cfg, lambda);
  const std::vector<Elem> basis = function_basis(cfg.n, bound);
  std::vector<DForm> images;
  std::map<Elem, Eigen::Index> rows;
  for (const auto& e : target.terms) rows.try_emplace(e.first, 0);
  for (const Elem& e : basis) {
    images.push_back(twisted_d(cfg, DFunc::single(e)));
    for (const auto& t : images.back().terms) rows.try_emplace(t.first, 0);
  }
  Eigen::Index r = 0;
  for (auto& [e, idx] : rows) idx = r++;
  const auto cols = static_cast<Eigen::Index>(basis.size());
  // A trivial 0 = 0 row keeps the system rectangular, so a rank-deficient
  // square case still yields a particular solution.
  const Eigen::Index nrows = r == cols ? r + 1 : r;
  RatMatrix a = RatMatrix::Constant(nrows, cols, RatFunc());
  RatVector rhs = RatVector::Constant(nrows, RatFunc());
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (const auto& [e, v] : images[static_cast<std::size_t>(c)].terms) a(rows.at(e), c) = v;
  }
  for (const auto& [e, v] : target.terms) rhs(rows.at(e)) = v;
  const LinearSolution sol = solve_linear(a, rhs);
  if (sol.status != LinearSolution::Status::Solved) return std::nullopt;
  DFunc g;
  for (Eigen::Index c = 0; c < cols; ++c) g.add(basis[static_cast<std::size_t>(c)], sol.x(c));
  return g;
}

ResonanceObstruction::ResonanceObstruction(int s, int o)
    : std::runtime_error("resonance obstruction at site " + std::to_string(s) + ", order " + std::to_string(o)),
      site(s),
      order(o) {}

LogReduction reduce_to_log(const Config& cfg, const DForm& w) {
  DForm work = w;
  LogReduction out;
  auto step = [&](const Elem& f, const RatFunc& lead, const RatFunc& a, int site, int order) {
    if (lead.is_zero()) throw ResonanceObstruction(site, order);
    const DFunc g = DFunc::single(f, a / lead);
    work -= twisted_d(cfg, g);
    out.g += g;
  };
  for (;;) {
    auto it = std::find_if(work.terms.rbegin(), work.terms.rend(),
                           [](const auto& t) { return t.first.kind == Elem::Kind::PolyPow; });
    if (it == work.terms.rend()) break;
    const int b = it->first.order;
    step(Elem::power(b + 1), (RatFunc(b + 1) * cfg.kappa - cfg.m_sum()) / cfg.kappa, it->second, cfg.n + 1, b);
  }
  for (int i = 1; i <= cfg.n; ++i) {
    for (;;) {
      int top = 0;
      RatFunc a;
      for (const auto& [e, c] : work.terms) {
        if (e.kind == Elem::Kind::PoleAt && e.site == i && e.order > top) {
          top = e.order;
          a = c;
        }
      }
      if (top < 2) break;
      step(Elem::pole(i, top - 1), -(cfg.m(i) + RatFunc(top - 1) * cfg.kappa) / cfg.kappa, a, i, top);
    }
  }
  for (int i = 1; i <= cfg.n; ++i) {
    const RatFunc r = work.coeff(Elem::pole(i, 1));
    if (r.is_zero()) {
      out.c.emplace_back();
    } else if (cfg.m(i).is_zero()) {
      throw ResonanceObstruction(i, 1);
    } else {
      out.c.push_back(r / cfg.m(i));
    }
  }
  return out;
}

}  // namespace rdf
