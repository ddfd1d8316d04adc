#include "rdf/dualform.hpp"

#include <algorithm>
#include <memory>

namespace rdf {

Gen transpose_anti(const Gen& g) noexcept {
  switch (g.letter) {
    case Letter::E:
      return Gen::f(-g.tpow);
    case Letter::F:
      return Gen::e(-g.tpow);
    case Letter::H:
      return Gen::h(-g.tpow);
    case Letter::C:
      break;
  }
  return g;
}

std::vector<Gen> transpose_anti(std::span<const Gen> word) {
  std::vector<Gen> out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(transpose_anti(*it));
  return out;
}

namespace {

PolyVector to_poly_coords(const UniversalCombination& x, Grade g) {
  const auto n = static_cast<Eigen::Index>(component_basis(g).size());
  PolyVector out = PolyVector::Constant(n, Poly());
  for (const auto& [m, p] : x) out(static_cast<Eigen::Index>(basis_index(m))) = p;
  return out;
}

PolyMatrix compute_gram(Grade g) {
  const auto& basis = component_basis(g);
  const auto n = static_cast<Eigen::Index>(basis.size());
  PolyMatrix out = PolyMatrix::Constant(n, n, Poly());
  if (n == 0) return out;
  if (g == Grade{0, 0}) {
    out(0, 0) = Poly(1);
    return out;
  }
  // S(g1 F', G) = S(F', tau(g1) G).
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto word = basis[static_cast<std::size_t>(r)].word();
    const Gen first = word.front();
    const Grade sub = g - first.degree();
    const PolyMatrix& inner = universal_gram(sub);
    const PolyVector rest = to_poly_coords(universal_word(std::span(word).subspan(1)), sub);
    const PolyVector left = inner.transpose() * rest;
    const Gen t = transpose_anti(first);
    for (Eigen::Index c = 0; c < n; ++c) {
      Poly acc;
      for (const auto& [m, p] : universal_act(t, basis[static_cast<std::size_t>(c)])) {
        const Poly& l = left(static_cast<Eigen::Index>(basis_index(m)));
        if (!l.is_zero()) acc += l * p;
      }
      out(r, c) = std::move(acc);
    }
  }
  return out;
}

DualVector dual_basis(PBWMonomial m) {
  m.canonicalize();
  return DualVector::basis(m);
}

}  // namespace

const PolyMatrix& universal_gram(Grade g) {
  static std::shared_mutex mutex;
  static std::map<Grade, std::unique_ptr<PolyMatrix>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(g);
    if (it != cache.end()) return *it->second;
  }
  auto mat = std::make_unique<PolyMatrix>(compute_gram(g));
  std::unique_lock lock(mutex);
  return *cache.try_emplace(g, std::move(mat)).first->second;
}

RatMatrix shapovalov_gram(const VermaModule& v, Grade g) {
  const PolyMatrix& u = universal_gram(g);
  RatMatrix out(u.rows(), u.cols());
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) out(r, c) = v.eval(u(r, c));
  }
  return out;
}

RatFunc shapovalov(const VermaModule& v, const VermaVector& x, const VermaVector& y) {
  if (x.is_zero() || y.is_zero() || !(x.grade == y.grade)) return RatFunc();
  const DualVector sx = shapovalov_map(v, x);
  RatFunc acc;
  for (const auto& [m, c] : y.coeffs) acc += sx.coeff(m) * c;
  return acc;
}

DualVector shapovalov_map(const VermaModule& v, const VermaVector& x) {
  DualVector out{x.grade, {}};
  if (x.is_zero()) return out;
  const RatMatrix gram = shapovalov_gram(v, x.grade);
  const RatVector y = gram * x.coordinates();
  return DualVector::from_coordinates(x.grade, y);
}

DualVector contragradient_act(const VermaModule& v, const Gen& g, const DualVector& phi) {
  DualVector out{phi.grade + g.degree(), {}};
  if (phi.is_zero() || !out.grade.valid()) return out;
  if (g.is_central()) return v.k() * phi;
  const RatMatrix& a = v.act_matrix(transpose_anti(g), out.grade);
  const RatVector y = a.transpose() * phi.coordinates();
  return DualVector::from_coordinates(out.grade, y);
}

GramSingular::GramSingular(Grade g)
    : std::runtime_error("Shapovalov form degenerate at grade (" + std::to_string(g.p1) + ", " +
                         std::to_string(g.p2) + ")"),
      grade(g) {}

VermaVector shapovalov_inverse_apply(const VermaModule& v, const DualVector& phi) {
  if (phi.is_zero()) return VermaVector{phi.grade, {}};
  auto sol = solve_linear(shapovalov_gram(v, phi.grade), phi.coordinates());
  if (sol.status != LinearSolution::Status::Solved) throw GramSingular(phi.grade);
  return VermaVector::from_coordinates(phi.grade, sol.x);
}

namespace {

const VermaModule& symbolic_module() {
  static const VermaModule module(RatFunc(Poly::variable(0)), RatFunc(Poly::variable(1)));
  return module;
}

Report compare(std::string name, const IdentitySides& s) {
  Report r;
  r.name = std::move(name);
  const DualVector diff = s.lhs - s.rhs;
  r.pass = diff.is_zero();
  r.detail = to_string(diff, universal_alphabet());
  return r;
}

}  // namespace

IdentitySides identity_a_sides(int b) {
  if (b < 1) throw std::invalid_argument("identity (a) needs b >= 1");
  const VermaModule& v = symbolic_module();
  const Grade g{b + 1, b};
  IdentitySides s{DualVector{g, {}}, DualVector{g, {}}};
  s.lhs = (v.M() + RatFunc(b) * v.kappa()) * dual_basis({{b}, {}, {}});
  s.rhs = contragradient_act(v, Gen::f(-b), dual_basis({}));
  for (int l = 1; l <= b; ++l) {
    DualVector inner{Grade{b - l + 2, b - l}, {}};
    for (int j = 0; 2 * j <= b - l; ++j) inner += dual_basis({{b - l - j, j}, {}, {}});
    s.rhs -= RatFunc(2) * contragradient_act(v, Gen::e(-l), inner);
    s.rhs -= contragradient_act(v, Gen::h(-l), dual_basis({{b - l}, {}, {}}));
  }
  return s;
}

IdentitySides identity_b_sides(int b) {
  if (b < 2) throw std::invalid_argument("identity (b) needs b >= 2");
  const VermaModule& v = symbolic_module();
  const Grade g{b - 1, b};
  IdentitySides s{DualVector{g, {}}, DualVector{g, {}}};
  s.lhs = (v.k() - v.M() + RatFunc(b - 1) * v.kappa()) * dual_basis({{}, {}, {b}});
  s.rhs = contragradient_act(v, Gen::e(-b), dual_basis({}));
  for (int l = 0; l <= b - 2; ++l) {
    DualVector inner{Grade{b - l - 2, b - l}, {}};
    for (int j = 1; 2 * j <= b - l; ++j) inner += dual_basis({{}, {}, {b - l - j, j}});
    s.rhs -= RatFunc(2) * contragradient_act(v, Gen::f(-l), inner);
    s.rhs += contragradient_act(v, Gen::h(-(l + 1)), dual_basis({{}, {}, {b - l - 1}}));
  }
  return s;
}

Report verify_identity_a(int b) { return compare("identity (a), b = " + std::to_string(b), identity_a_sides(b)); }

Report verify_identity_b(int b) { return compare("identity (b), b = " + std::to_string(b), identity_b_sides(b)); }

namespace {

Poly normalized(Poly p) { return p.leading().coeff < 0 ? -p : p; }

std::string line_label(const KacKazhdanLine& line) {
  switch (line.type) {
    case KacKazhdanLine::Type::A:
      return "A(" + std::to_string(line.l) + "," + std::to_string(line.a) + ")";
    case KacKazhdanLine::Type::B:
      return "B(" + std::to_string(line.l) + "," + std::to_string(line.a) + ")";
    case KacKazhdanLine::Type::KappaZero:
      break;
  }
  return "kappa";
}

}  // namespace

GramDeterminant gram_determinant(Grade g) {
  GramDeterminant out;
  out.grade = g;
  out.det = determinant(universal_gram(g));
  out.residual = out.det;
  if (out.det.is_zero()) return out;

  std::vector<GramFactor> candidates;
  auto push = [&](std::string label, Poly form) {
    form = normalized(std::move(form));
    for (const auto& c : candidates) {
      if (c.form == form) return;
    }
    candidates.push_back({std::move(label), std::move(form), 0});
  };
  const int reach = std::max(1, g.p1 + g.p2);
  for (const auto& line : kac_kazhdan_lines(reach, reach)) push(line_label(line), line.form());
  const Poly m = Poly::variable(0);
  const Poly k = Poly::variable(1);
  push("M", m);
  push("k-M", k - m);
  push("kappa", k + Poly(2));

  for (auto& c : candidates) {
    while (auto q = divide_exact(out.residual, c.form)) {
      out.residual = std::move(*q);
      ++c.multiplicity;
    }
    if (c.multiplicity > 0) out.factors.push_back(c);
  }
  return out;
}

}  // namespace rdf
