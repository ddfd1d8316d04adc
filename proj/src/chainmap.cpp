#include "rdf/chainmap.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <tuple>

#include "rdf/linalg.hpp"

namespace rdf {

SiteConfig::SiteConfig(Config cfg, int truncation) : cfg_(std::move(cfg)), truncation_(truncation) {
  cfg_.validate();
  const RatFunc k = cfg_.kappa - RatFunc(2);
  for (int s = 1; s <= sites(); ++s) modules_.push_back(std::make_unique<VermaModule>(weight(s), k));
}

RatFunc SiteConfig::weight(int site) const {
  if (site == cfg_.n + 1) return cfg_.m_inf();
  return cfg_.m(site);
}

const VermaModule& SiteConfig::module(int site) const {
  if (site < 1 || site > sites()) throw std::out_of_range("site out of range");
  return *modules_[static_cast<std::size_t>(site - 1)];
}

TruncationTooSmall::TruncationTooSmall(int s, Grade g, int b)
    : std::runtime_error("grade (" + std::to_string(g.p1) + ", " + std::to_string(g.p2) + ") at site " +
                         std::to_string(s) + " exceeds the truncation bound " + std::to_string(b)),
      site(s),
      grade(g),
      bound(b) {}

RatFunc Laurent::at(int m) const {
  if (m < lowest || m > highest()) return RatFunc();
  return c[static_cast<std::size_t>(m - lowest)];
}

namespace {

// binom(n, r) for any integer n and r >= 0.
RatFunc binom(long n, long r) {
  mpz_class out;
  if (n >= 0) {
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return RatFunc(Poly(out));
  }
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(-n + r - 1), static_cast<unsigned long>(r));
  if (r % 2 != 0) out = -out;
  return RatFunc(Poly(out));
}

std::string letter_name(Letter x) {
  switch (x) {
    case Letter::E:
      return "e";
    case Letter::F:
      return "f";
    case Letter::H:
      return "h";
    case Letter::C:
      break;
  }
  return "c";
}

// <x, y> = tr(xy): <e,f> = 1, <h,h> = 2.
long pairing(Letter x, Letter y) {
  if ((x == Letter::E && y == Letter::F) || (x == Letter::F && y == Letter::E)) return 1;
  if (x == Letter::H && y == Letter::H) return 2;
  return 0;
}

int max_coordinate(const TensorKey& key, std::size_t site) {
  const Grade g = key[site].grade();
  return std::max(g.p1, g.p2);
}

std::string tensor_text(const TensorKey& key) {
  std::string out;
  for (const auto& m : key) {
    if (!out.empty()) out += " x ";
    out += "(" + to_string(m) + ")*";
  }
  return out;
}

}  // namespace

int pole_order(const Config& cfg, const DFunc& f, int site) {
  int out = 0;
  for (const auto& [e, c] : f.terms) {
    if (site == cfg.n + 1) {
      if (e.kind == Elem::Kind::PolyPow) out = std::max(out, e.order);
    } else if (e.kind == Elem::Kind::PoleAt && e.site == site) {
      out = std::max(out, e.order);
    }
  }
  return out;
}

Laurent laurent_coeffs(const Config& cfg, const DFunc& f, int site, int up_to) {
  if (site < 1 || site > cfg.n + 1) throw std::out_of_range("site out of range");
  Laurent out;
  out.lowest = -pole_order(cfg, f, site);
  out.c.assign(static_cast<std::size_t>(std::max(0, up_to - out.lowest + 1)), RatFunc());
  auto put = [&](int m, const RatFunc& v) {
    if (m <= up_to && !v.is_zero()) out.c[static_cast<std::size_t>(m - out.lowest)] += v;
  };
  const bool inf = site == cfg.n + 1;
  for (const auto& [e, coeff] : f.terms) {
    const int b = e.order;
    if (inf) {
      if (e.kind == Elem::Kind::PolyPow) {
        put(-b, coeff);
      } else {
        // (t - z)^-b = s^b (1 - z s)^-b
        const RatFunc& z = cfg.zi(e.site);
        for (int r = 0; b + r <= up_to; ++r) put(b + r, coeff * binom(b + r - 1, r) * z.pow(r));
      }
      continue;
    }
    const RatFunc& zs = cfg.zi(site);
    if (e.kind == Elem::Kind::PolyPow) {
      for (int m = 0; m <= std::min(b, up_to); ++m) put(m, coeff * binom(b, m) * zs.pow(b - m));
    } else if (e.site == site) {
      put(-b, coeff);
    } else {
      // (u + d)^-b with u = t - z_site
      const RatFunc d = zs - cfg.zi(e.site);
      const RatFunc dinv = d.inverse();
      RatFunc dp = dinv.pow(b);
      for (int m = 0; m <= up_to; ++m) {
        put(m, coeff * binom(-b, m) * dp);
        dp *= dinv;
      }
    }
  }
  return out;
}

DFunc multiply(const Config& cfg, const DFunc& a, const DFunc& b) {
  DFunc out;
  for (int s = 1; s <= cfg.n + 1; ++s) {
    const int oa = pole_order(cfg, a, s);
    const int ob = pole_order(cfg, b, s);
    if (oa + ob == 0 && s <= cfg.n) continue;
    const int up = std::max(oa, ob);
    const Laurent la = laurent_coeffs(cfg, a, s, up);
    const Laurent lb = laurent_coeffs(cfg, b, s, up);
    const int top = s == cfg.n + 1 ? 0 : -1;
    for (int m = -(oa + ob); m <= top; ++m) {
      RatFunc acc;
      for (int p = la.lowest; p <= la.highest(); ++p) acc += la.at(p) * lb.at(m - p);
      if (acc.is_zero()) continue;
      out.add(s == cfg.n + 1 ? Elem::power(-m) : Elem::pole(s, -m), acc);
    }
  }
  return out;
}

GlobalSl2Func GlobalSl2Func::single(Letter x, const DFunc& f) {
  GlobalSl2Func out;
  out.add(x, f);
  return out;
}

GlobalSl2Func GlobalSl2Func::single(Letter x, const Elem& e, const RatFunc& c) {
  return single(x, DFunc::single(e, c));
}

void GlobalSl2Func::add(Letter x, const DFunc& f) {
  if (x == Letter::C) throw std::invalid_argument("sl2-valued functions have no central part");
  if (f.is_zero()) return;
  auto [it, inserted] = parts.try_emplace(x);
  it->second += f;
  if (it->second.is_zero()) parts.erase(it);
}

GlobalSl2Func& GlobalSl2Func::operator+=(const GlobalSl2Func& o) {
  for (const auto& [x, f] : o.parts) add(x, f);
  return *this;
}

GlobalSl2Func& GlobalSl2Func::operator*=(const RatFunc& s) {
  if (s.is_zero()) parts.clear();
  for (auto& [x, f] : parts) f *= s;
  return *this;
}

GlobalSl2Func bracket(const Config& cfg, const GlobalSl2Func& a, const GlobalSl2Func& b) {
  GlobalSl2Func out;
  for (const auto& [x, f] : a.parts) {
    for (const auto& [y, g] : b.parts) {
      const auto terms = bracket(Gen{x, 0}, Gen{y, 0});
      if (terms.empty()) continue;
      const DFunc fg = multiply(cfg, f, g);
      for (const auto& t : terms) {
        if (!t.gen.is_central()) out.add(t.gen.letter, RatFunc(t.coeff) * fg);
      }
    }
  }
  return out;
}

std::string to_string(const GlobalSl2Func& a, const Config& cfg) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [x, f] : a.parts) {
    if (!out.empty()) out += " + ";
    out += letter_name(x) + "*(" + to_string(f, cfg) + ")";
  }
  return out;
}

TensorDual TensorDual::vacuum(int sites, const RatFunc& c) {
  TensorDual out;
  out.add(TensorKey(static_cast<std::size_t>(sites)), c);
  return out;
}

TensorDual TensorDual::at_site(int sites, int site, const PBWMonomial& m, const RatFunc& c) {
  TensorKey key(static_cast<std::size_t>(sites));
  key.at(static_cast<std::size_t>(site - 1)) = m;
  TensorDual out;
  out.add(key, c);
  return out;
}

RatFunc TensorDual::coeff(const TensorKey& k) const {
  auto it = terms.find(k);
  return it == terms.end() ? RatFunc() : it->second;
}

void TensorDual::add(const TensorKey& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(k, RatFunc());
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

TensorDual& TensorDual::operator+=(const TensorDual& o) {
  for (const auto& [k, c] : o.terms) add(k, c);
  return *this;
}

TensorDual& TensorDual::operator-=(const TensorDual& o) {
  for (const auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

TensorDual& TensorDual::operator*=(const RatFunc& s) {
  if (s.is_zero()) terms.clear();
  for (auto& [k, c] : terms) c *= s;
  return *this;
}

std::string to_string(const TensorDual& w, const Config& cfg) {
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : w.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + cfg.format(c) + ")*[" + tensor_text(k) + "]";
  }
  return out;
}

bool operator<(const Chain1Key& a, const Chain1Key& b) {
  return std::tie(a.letter, a.elem, a.tensor) < std::tie(b.letter, b.elem, b.tensor);
}

void Chain1::add(Letter x, const Elem& e, const TensorKey& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(Chain1Key{x, e, k}, RatFunc());
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

void Chain1::add(const GlobalSl2Func& a, const TensorDual& w) {
  for (const auto& [x, f] : a.parts) {
    for (const auto& [e, c] : f.terms) {
      for (const auto& [k, d] : w.terms) add(x, e, k, c * d);
    }
  }
}

Chain1& Chain1::operator+=(const Chain1& o) {
  for (const auto& [k, c] : o.terms) add(k.letter, k.elem, k.tensor, c);
  return *this;
}

std::string to_string(const Chain1& x, const Config& cfg) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + cfg.format(c) + ")*" + letter_name(k.letter) + "*" + to_string(k.elem) + " (x) [" +
           tensor_text(k.tensor) + "]";
  }
  return out;
}

TensorDual mu_act(const SiteConfig& sc, const GlobalSl2Func& a, const TensorDual& w) {
  const Config& cfg = sc.config();
  TensorDual out;
  if (a.is_zero() || w.is_zero()) return out;
  for (const auto& [key, coeff] : w.terms) {
    if (key.size() != static_cast<std::size_t>(sc.sites())) throw std::invalid_argument("tensor arity mismatch");
    for (int s = 1; s <= sc.sites(); ++s) {
      const auto idx = static_cast<std::size_t>(s - 1);
      const VermaModule& v = sc.module(s);
      const DualVector phi = DualVector::basis(key[idx]);
      const Grade g = phi.grade;
      // Beyond m = p1 + p2 + 1 every X T^m takes phi out of the valid grades.
      const int cutoff = g.p1 + g.p2 + 1;
      for (const auto& [x, f] : a.parts) {
        const int bound =
            sc.truncation() > 0 ? sc.truncation() : max_coordinate(key, idx) + pole_order(cfg, f, s) + 2;
        const Laurent lf = laurent_coeffs(cfg, f, s, cutoff);
        for (int m = lf.lowest; m <= lf.highest(); ++m) {
          const RatFunc cm = lf.at(m);
          if (cm.is_zero()) continue;
          Gen gen{x, m};
          RatFunc sign(1);
          if (s == sc.sites()) {
            const GenTerm t = pi_twist(gen);
            gen = t.gen;
            sign = RatFunc(t.coeff);
          }
          const Grade to = g + gen.degree();
          if (!to.valid()) continue;
          if (to.p1 > bound || to.p2 > bound) throw TruncationTooSmall(s, to, bound);
          const DualVector psi = contragradient_act(v, gen, phi);
          const RatFunc scale = coeff * cm * sign;
          for (const auto& [mono, val] : psi.coeffs) {
            TensorKey nk = key;
            nk[idx] = mono;
            out.add(nk, scale * val);
          }
        }
      }
    }
  }
  return out;
}

TensorDual mu_act(const SiteConfig& sc, const Chain1& x) {
  TensorDual out;
  for (const auto& [k, c] : x.terms) {
    TensorDual w;
    w.add(k.tensor, c);
    out += mu_act(sc, GlobalSl2Func::single(k.letter, k.elem), w);
  }
  return out;
}

RatFunc central_residue(const SiteConfig& sc, const GlobalSl2Func& a, const GlobalSl2Func& b) {
  const Config& cfg = sc.config();
  RatFunc total;
  for (int s = 1; s <= sc.sites(); ++s) {
    for (const auto& [x, f] : a.parts) {
      for (const auto& [y, g] : b.parts) {
        const long p = pairing(x, y);
        if (p == 0) continue;
        const int of = pole_order(cfg, f, s);
        const int og = pole_order(cfg, g, s);
        const Laurent lf = laurent_coeffs(cfg, f, s, og);
        const Laurent lg = laurent_coeffs(cfg, g, s, of);
        for (int m = -of; m <= og; ++m) total += RatFunc(m * p) * lf.at(m) * lg.at(-m);
      }
    }
  }
  return total;
}

TensorDual eta1(const SiteConfig& sc, const DForm& w) {
  const RatFunc& kappa = sc.config().kappa;
  TensorDual out;
  for (const auto& [e, c] : w.terms) {
    if (e.kind == Elem::Kind::PoleAt) {
      out += TensorDual::at_site(sc.sites(), e.site, PBWMonomial{{e.order - 1}, {}, {}}, -kappa * c);
    } else {
      out += TensorDual::at_site(sc.sites(), sc.sites(), PBWMonomial{{}, {}, {e.order + 1}}, kappa * c);
    }
  }
  return out;
}

Chain1 eta0(const SiteConfig& sc, const DFunc& f) {
  const int ns = sc.sites();
  const TensorKey vac(static_cast<std::size_t>(ns));
  auto key_at = [&](int site, PBWMonomial m) {
    TensorKey k = vac;
    k[static_cast<std::size_t>(site - 1)] = std::move(m);
    return k;
  };
  Chain1 out;
  for (const auto& [e, c] : f.terms) {
    const int b = e.order;
    out.add(Letter::F, e, vac, c);
    if (e.kind == Elem::Kind::PoleAt) {
      const int m = e.site;
      for (int l = 1; l <= b; ++l) {
        for (int j = 0; 2 * j <= b - l; ++j) {
          out.add(Letter::E, Elem::pole(m, l), key_at(m, PBWMonomial{{b - l - j, j}, {}, {}}), RatFunc(-2) * c);
        }
        out.add(Letter::H, Elem::pole(m, l), key_at(m, PBWMonomial{{b - l}, {}, {}}), -c);
      }
    } else {
      for (int l = 0; l <= b - 2; ++l) {
        for (int j = 1; 2 * j <= b - l; ++j) {
          out.add(Letter::E, Elem::power(l), key_at(ns, PBWMonomial{{}, {}, {b - l - j, j}}), RatFunc(-2) * c);
        }
        out.add(Letter::H, Elem::power(l + 1), key_at(ns, PBWMonomial{{}, {}, {b - l - 1}}), -c);
      }
    }
  }
  return out;
}

Report verify_chain_map(const SiteConfig& sc, const DFunc& f) {
  const Config& cfg = sc.config();
  Report r;
  r.name = "chain map on " + to_string(f, cfg);
  const TensorDual lhs = eta1(sc, twisted_d(cfg, f));
  const TensorDual rhs = mu_act(sc, eta0(sc, f));
  const TensorDual diff = lhs - rhs;
  r.pass = diff.is_zero();
  r.detail = r.pass ? "equal" : "difference " + to_string(diff, cfg);
  return r;
}

namespace {

// Rank of the images, one column per input.
template <typename In, typename Img>
std::pair<Eigen::Index, Eigen::Index> image_rank(const std::vector<In>& inputs, Img image) {
  std::map<typename std::invoke_result_t<Img, const In&>::key_type, Eigen::Index> rows;
  std::vector<typename std::invoke_result_t<Img, const In&>> images;
  for (const auto& x : inputs) {
    images.push_back(image(x));
    for (const auto& [k, c] : images.back()) rows.try_emplace(k, static_cast<Eigen::Index>(rows.size()));
  }
  RatMatrix m = RatMatrix::Constant(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(inputs.size()),
                                    RatFunc());
  for (std::size_t c = 0; c < images.size(); ++c) {
    for (const auto& [k, v] : images[c]) m(rows.at(k), static_cast<Eigen::Index>(c)) = v;
  }
  return {rank(m), static_cast<Eigen::Index>(inputs.size())};
}

}  // namespace

Report eta_injectivity_check(const SiteConfig& sc, int bound) {
  const Config& cfg = sc.config();
  Report r;
  r.name = "eta injective up to order " + std::to_string(bound);
  std::vector<Elem> forms;
  for (int i = 1; i <= cfg.n; ++i) {
    for (int b = 1; b <= bound; ++b) forms.push_back(Elem::pole(i, b));
  }
  for (int b = 0; b <= bound; ++b) forms.push_back(Elem::power(b));
  const auto one = image_rank(forms, [&](const Elem& e) { return eta1(sc, DForm::single(e)).terms; });
  const auto zero =
      image_rank(function_basis(cfg.n, bound), [&](const Elem& e) { return eta0(sc, DFunc::single(e)).terms; });
  r.pass = one.first == one.second && zero.first == zero.second;
  r.detail = "eta1 rank " + std::to_string(one.first) + "/" + std::to_string(one.second) + ", eta0 rank " +
             std::to_string(zero.first) + "/" + std::to_string(zero.second);
  return r;
}

Report lie_action_check(const SiteConfig& sc, const GlobalSl2Func& a, const GlobalSl2Func& b, const TensorDual& w) {
  const Config& cfg = sc.config();
  Report r;
  r.name = "Lie action";
  const TensorDual lhs = mu_act(sc, a, mu_act(sc, b, w)) - mu_act(sc, b, mu_act(sc, a, w));
  const TensorDual rhs = mu_act(sc, bracket(cfg, a, b), w);
  const RatFunc central = central_residue(sc, a, b);
  const TensorDual diff = lhs - rhs;
  r.pass = diff.is_zero() && central.is_zero();
  r.detail = "central residue " + cfg.format(central) + ", difference " + to_string(diff, cfg);
  return r;
}

namespace {

template <typename Vec, typename Act>
Vec sugawara(const VermaModule& v, const Vec& x, Act act) {
  Vec out{x.grade + Grade{1, 1}, {}};
  if (x.is_zero() || !x.grade.valid()) return out;
  const int top = x.grade.p1 + x.grade.p2 + 1;
  for (int i = 0; i <= top; ++i) {
    out += act(Gen::e(-i - 1), act(Gen::f(i), x));
    out += act(Gen::f(-i - 1), act(Gen::e(i), x));
    out += RatFunc::fraction(1, 2) * act(Gen::h(-i - 1), act(Gen::h(i), x));
  }
  out *= v.kappa().inverse();
  return out;
}

}  // namespace

VermaVector l_minus1(const VermaModule& v, const VermaVector& x) {
  return sugawara(v, x, [&](const Gen& g, const VermaVector& y) { return v.act(g, y); });
}

DualVector l_minus1(const VermaModule& v, const DualVector& phi) {
  return sugawara(v, phi, [&](const Gen& g, const DualVector& y) { return contragradient_act(v, g, y); });
}

Report l_minus1_commutator_check(Letter x, int i, int bound) {
  Report r;
  r.name = "[L_-1, " + letter_name(x) + "T^" + std::to_string(i) + "]";
  const Alphabet& alpha = universal_alphabet();
  const VermaModule v(RatFunc::variable(0), RatFunc::variable(1));
  const Gen g{x, i};
  const Gen g1{x, i - 1};
  int checked = 0;
  for (int total = 0; total <= bound; ++total) {
    for (int p1 = 0; p1 <= total; ++p1) {
      for (const auto& m : component_basis(Grade{p1, total - p1})) {
        const VermaVector b = v.basis_vector(m);
        const VermaVector lhs = l_minus1(v, v.act(g, b)) - v.act(g, l_minus1(v, b));
        const VermaVector rhs = RatFunc(-i) * v.act(g1, b);
        ++checked;
        if (lhs != rhs) {
          r.detail = "mismatch on " + to_string(m) + ": " + to_string(lhs - rhs, alpha);
          return r;
        }
      }
    }
  }
  r.pass = true;
  r.detail = std::to_string(checked) + " basis vectors";
  return r;
}

TensorDual l_minus1_at(const SiteConfig& sc, int site, const TensorDual& w) {
  const auto idx = static_cast<std::size_t>(site - 1);
  const VermaModule& v = sc.module(site);
  TensorDual out;
  for (const auto& [key, c] : w.terms) {
    const DualVector y = l_minus1(v, DualVector::basis(key.at(idx)));
    for (const auto& [mono, val] : y.coeffs) {
      TensorKey nk = key;
      nk[idx] = mono;
      out.add(nk, c * val);
    }
  }
  return out;
}

namespace {

int z_index(const Config& cfg, int i) {
  const std::string name = "z" + std::to_string(i);
  if (!cfg.alphabet.contains(name) || cfg.zi(i) != cfg.alphabet.var(name)) {
    throw std::invalid_argument("z" + std::to_string(i) + " is not symbolic");
  }
  return cfg.alphabet.symbol(name).index;
}

}  // namespace

DFunc dz(const Config& cfg, const DFunc& f, int i) {
  const int var = z_index(cfg, i);
  DFunc out;
  for (const auto& [e, c] : f.terms) {
    out.add(e, c.derivative(var));
    if (e.kind == Elem::Kind::PoleAt && e.site == i) out.add(Elem::pole(i, e.order + 1), RatFunc(e.order) * c);
  }
  return out;
}

TensorDual dz(const Config& cfg, const TensorDual& w, int i) {
  const int var = z_index(cfg, i);
  TensorDual out;
  for (const auto& [k, c] : w.terms) out.add(k, c.derivative(var));
  return out;
}

Report kz_leibniz_check(const SiteConfig& sc, const GlobalSl2Func& a, const TensorDual& g, int i) {
  const Config& cfg = sc.config();
  Report r;
  r.name = "KZ Leibniz at z" + std::to_string(i);
  auto nabla = [&](const TensorDual& w) { return dz(cfg, w, i) + l_minus1_at(sc, i, w); };
  GlobalSl2Func da;
  for (const auto& [x, f] : a.parts) da.add(x, dz(cfg, f, i));
  const TensorDual lhs = nabla(mu_act(sc, a, g));
  const TensorDual rhs = mu_act(sc, da, g) + mu_act(sc, a, nabla(g));
  const TensorDual diff = lhs - rhs;
  r.pass = diff.is_zero();
  r.detail = r.pass ? "equal" : "difference " + to_string(diff, cfg);
  return r;
}

}  // namespace rdf
