#include "rdf/gaussmanin.hpp"

#include <string>

namespace rdf {

void MixedForm2::add(int p, int q, const RatFunc& c) {
  if (p == q || c.is_zero()) return;
  const RatFunc v = p < q ? c : -c;
  const auto key = p < q ? std::pair{p, q} : std::pair{q, p};
  auto [it, inserted] = comps.try_emplace(key, RatFunc());
  it->second += v;
  if (it->second.is_zero()) comps.erase(it);
}

RatFunc MixedForm2::coeff(int p, int q) const {
  if (p == q) return RatFunc();
  auto it = comps.find(p < q ? std::pair{p, q} : std::pair{q, p});
  if (it == comps.end()) return RatFunc();
  return p < q ? it->second : -it->second;
}

GMExpansion& GMExpansion::operator+=(const GMExpansion& o) {
  if (zt.size() < o.zt.size()) zt.resize(o.zt.size());
  for (const auto& [k, f] : o.zz) {
    zz[k] += f;
    if (zz[k].is_zero()) zz.erase(k);
  }
  for (std::size_t j = 0; j < o.zt.size(); ++j) zt[j] += o.zt[j];
  return *this;
}

GMExpansion& GMExpansion::operator*=(const RatFunc& s) {
  for (auto& [k, f] : zz) f *= s;
  for (auto& w : zt) w *= s;
  if (s.is_zero()) zz.clear();
  return *this;
}

MixedForm2 to_mixed(const Config& cfg, const GMExpansion& x) {
  MixedForm2 out;
  for (const auto& [k, f] : x.zz) out.add(k.first, k.second, as_rational(cfg, f));
  for (std::size_t j = 0; j < x.zt.size(); ++j) {
    out.add(static_cast<int>(j) + 1, cfg.n + 1, as_rational(cfg, x.zt[j]));
  }
  return out;
}

namespace {

using DzCombo = std::map<int, RatFunc>;

// Adds (sum_p a_p dz_p) ^ E.
void wedge_dz(GMExpansion& out, const DzCombo& dz, const Elem& e) {
  for (const auto& [p, a] : dz) {
    if (a.is_zero()) continue;
    out.zt[static_cast<std::size_t>(p - 1)].add(e, a);
    if (e.kind != Elem::Kind::PoleAt) continue;
    // E = (dt - dz_i)/(t - z_i)^b.
    const int i = e.site;
    if (p == i) continue;
    const DFunc f = DFunc::single(Elem::pole(i, e.order), p < i ? -a : a);
    const auto key = p < i ? std::pair{p, i} : std::pair{i, p};
    auto& slot = out.zz[key];
    slot += f;
    if (slot.is_zero()) out.zz.erase(key);
  }
}

DzCombo d_diff(int a, int b, const RatFunc& c) { return {{a, c}, {b, -c}}; }

}  // namespace

GMExpansion beta_wedge_expansion(const Config& cfg, const Elem& e) {
  GMExpansion out(cfg.n);
  const RatFunc half = RatFunc::fraction(1, 2);
  const int n = cfg.n;
  if (e.kind == Elem::Kind::PoleAt) {
    const int i = e.site;
    const int b = e.order;
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        if (j == i || k == i) continue;
        wedge_dz(out, d_diff(j, k, half * cfg.m(j) * cfg.m(k) / (cfg.zi(j) - cfg.zi(k))), e);
      }
    }
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      const RatFunc inv = (cfg.zi(j) - cfg.zi(i)).inverse();
      wedge_dz(out, d_diff(j, i, half * cfg.m(j) * (cfg.m(i) - RatFunc(2)) * inv), e);
      wedge_dz(out, d_diff(j, i, cfg.m(j) * inv.pow(b)), Elem::pole(j, 1));
      for (int m = 1; m <= b - 1; ++m) {
        wedge_dz(out, d_diff(j, i, -(cfg.m(j) * inv.pow(b - m + 1))), Elem::pole(i, m));
      }
    }
    return out;
  }
  const int b = e.order;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      wedge_dz(out, d_diff(j, k, half * cfg.m(j) * cfg.m(k) / (cfg.zi(j) - cfg.zi(k))), e);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int a = 0; a <= b - 1; ++a) wedge_dz(out, {{i, cfg.m(i) * cfg.zi(i).pow(b - 1 - a)}}, Elem::power(a));
    wedge_dz(out, {{i, cfg.m(i) * cfg.zi(i).pow(b)}}, Elem::pole(i, 1));
  }
  return out;
}

namespace {

// 1-form sum_p c[p-1] dx_p on (z, t)-space, p = n + 1 being dt.
using OneForm = std::vector<RatFunc>;

OneForm kappa_beta(const Config& cfg) {
  const RatFunc t = cfg.alphabet.var("t");
  OneForm out(static_cast<std::size_t>(cfg.n) + 1);
  for (int i = 1; i <= cfg.n; ++i) {
    const RatFunc pole = cfg.m(i) / (t - cfg.zi(i));
    out[static_cast<std::size_t>(cfg.n)] -= pole;
    out[static_cast<std::size_t>(i - 1)] += pole;
    for (int j = 1; j <= cfg.n; ++j) {
      if (j == i) continue;
      out[static_cast<std::size_t>(i - 1)] += RatFunc::fraction(1, 2) * cfg.m(i) * cfg.m(j) / (cfg.zi(i) - cfg.zi(j));
    }
  }
  return out;
}

OneForm as_one_form(const Config& cfg, const DForm& w) {
  const RatFunc t = cfg.alphabet.var("t");
  OneForm out(static_cast<std::size_t>(cfg.n) + 1);
  for (const auto& [e, c] : w.terms) {
    if (e.kind == Elem::Kind::PolyPow) {
      out[static_cast<std::size_t>(cfg.n)] += c * t.pow(e.order);
    } else {
      const RatFunc v = c * (t - cfg.zi(e.site)).pow(e.order).inverse();
      out[static_cast<std::size_t>(cfg.n)] += v;
      out[static_cast<std::size_t>(e.site - 1)] -= v;
    }
  }
  return out;
}

MixedForm2 wedge(const OneForm& a, const OneForm& b) {
  MixedForm2 out;
  const int dim = static_cast<int>(a.size());
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      out.add(p + 1, q + 1, a[static_cast<std::size_t>(p)] * b[static_cast<std::size_t>(q)] -
                                a[static_cast<std::size_t>(q)] * b[static_cast<std::size_t>(p)]);
    }
  }
  return out;
}

GMExpansion closed_expansion(const Config& cfg, const DForm& w) {
  GMExpansion out(cfg.n);
  for (const auto& [e, c] : w.terms) {
    GMExpansion x = beta_wedge_expansion(cfg, e);
    x *= c;
    out += x;
  }
  return out;
}

std::optional<int> z_symbol(const Config& cfg, int j) {
  const std::string name = "z" + std::to_string(j);
  if (!cfg.alphabet.contains(name)) return std::nullopt;
  const RatFunc v = cfg.alphabet.var(name);
  if (!(cfg.zi(j) == v)) return std::nullopt;
  return cfg.alphabet.symbol(name).index;
}

}  // namespace

MixedForm2 beta_wedge(const Config& cfg, const DForm& w, BetaMode mode) {
  if (mode == BetaMode::Closed) return to_mixed(cfg, closed_expansion(cfg, w));
  return wedge(kappa_beta(cfg), as_one_form(cfg, w));
}

DForm covariant_derivative(const Config& cfg, const DForm& w, int j) {
  if (j < 1 || j > cfg.n) throw std::out_of_range("direction out of range");
  DForm out = cfg.kappa.inverse() * closed_expansion(cfg, w).zt[static_cast<std::size_t>(j - 1)];
  if (auto var = z_symbol(cfg, j)) {
    // d(c E) = dc ^ E since every elementary form is closed.
    for (const auto& [e, c] : w.terms) out.add(e, c.derivative(*var));
  }
  return out;
}

ConnectionMatrix gm_connection_matrix(const Config& cfg) {
  ConnectionMatrix out;
  out.n = cfg.n;
  const auto n = static_cast<Eigen::Index>(cfg.n);
  for (int j = 1; j <= cfg.n; ++j) {
    RatMatrix mat = RatMatrix::Constant(n, n, RatFunc());
    for (int i = 1; i <= cfg.n; ++i) {
      const DForm d = cfg.kappa * covariant_derivative(cfg, log_form(cfg, i), j);
      for (const auto& [e, c] : d.terms) {
        if (!e.is_log()) throw NonLogarithmicRemainder("non-logarithmic term " + to_string(e));
        if (cfg.m(e.site).is_zero()) throw NonLogarithmicRemainder("term on a vanishing log form");
        mat(i - 1, e.site - 1) = c / cfg.m(e.site);
      }
    }
    out.dir.push_back(std::move(mat));
  }
  return out;
}

DForm gm_curvature(const Config& cfg, const DForm& w, int i, int j) {
  auto nabla = [&](const DForm& x, int d) { return cfg.kappa * covariant_derivative(cfg, x, d); };
  return nabla(nabla(w, j), i) - nabla(nabla(w, i), j);
}

Report verify_flatness(const Config& cfg) {
  Report r;
  r.name = "Gauss-Manin flatness, n = " + std::to_string(cfg.n);
  for (int j = 1; j <= cfg.n; ++j) {
    if (!z_symbol(cfg, j)) throw std::invalid_argument("flatness needs symbolic points");
  }
  r.pass = true;
  for (int m = 1; m <= cfg.n && r.pass; ++m) {
    for (int i = 1; i <= cfg.n && r.pass; ++i) {
      for (int j = i + 1; j <= cfg.n && r.pass; ++j) {
        const DForm curv = gm_curvature(cfg, log_form(cfg, m), i, j);
        const LogReduction red = reduce_to_log(cfg, curv);
        if (!verify_relation(cfg, red.c, 1)) {
          r.pass = false;
          r.detail = "omega_" + std::to_string(m) + ", directions " + std::to_string(i) + "," + std::to_string(j) +
                     ": " + to_string(curv, cfg);
        }
      }
    }
  }
  if (r.pass) r.detail = "curvature exact on every omega_m";
  return r;
}

Report verify_restricted_invariance(const Config& cfg) {
  Report r;
  r.name = "restricted subbundle invariance, n = " + std::to_string(cfg.n);
  r.pass = true;
  for (int i = 1; i <= cfg.n && r.pass; ++i) {
    for (int j = 1; j <= cfg.n && r.pass; ++j) {
      const DForm d = covariant_derivative(cfg, log_form(cfg, i), j);
      bool log_only = true;
      for (const auto& t : d.terms) log_only = log_only && t.first.is_log();
      if (!log_only || !restricted_check(cfg, d)) {
        r.pass = false;
        r.detail = "nabla_" + std::to_string(j) + " omega_" + std::to_string(i) + " = " + to_string(d, cfg);
      }
    }
  }
  if (r.pass) r.detail = "every nabla omega_i is logarithmic and restricted";
  return r;
}

}  // namespace rdf
