#include "rdf/linalg.hpp"

#include <map>

namespace rdf {

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Poly(1);
  PolyMatrix work = m;
  int sign = 1;
  auto pivots = bareiss_echelon(work, &sign);
  if (static_cast<Eigen::Index>(pivots.size()) < m.rows()) return Poly();
  Poly det = work(m.rows() - 1, m.cols() - 1);
  return sign < 0 ? -det : det;
}

PolyMatrix clear_denominators(const RatMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Poly lcm(1);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Poly& d = m(r, c).den();
      if (d.is_one()) continue;
      auto g = gcd_cofactors(lcm, d);
      lcm = lcm * g.cofactor_b;
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(r, c) = m(r, c).num() * exact_div(lcm, m(r, c).den());
    }
  }
  return out;
}

Eigen::Index rank(const RatMatrix& m) {
  PolyMatrix work = clear_denominators(m);
  return static_cast<Eigen::Index>(bareiss_echelon(work).size());
}

namespace {

std::size_t cost(const RatFunc& f) { return f.num().size() + f.den().size(); }

// Field elimination on sparse rows with Markowitz pivot choice.
LinearSolution solve_sparse(const RatMatrix& a, const RatVector& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  using Row = std::map<Eigen::Index, RatFunc>;
  std::vector<Row> rows(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    auto& row = rows[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!a(r, c).is_zero()) row.emplace(c, a(r, c));
    }
    if (!b(r).is_zero()) row.emplace(n, b(r));
  }
  std::vector<bool> row_done(static_cast<std::size_t>(m), false);
  std::vector<bool> col_done(static_cast<std::size_t>(n), false);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pivots;
  for (;;) {
    std::vector<std::size_t> col_count(static_cast<std::size_t>(n), 0);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (row_done[static_cast<std::size_t>(r)]) continue;
      for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) {
        if (c < n) ++col_count[static_cast<std::size_t>(c)];
      }
    }
    Eigen::Index pr = -1;
    Eigen::Index pc = -1;
    std::size_t best = 0;
    std::size_t best_cost = 0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (row_done[static_cast<std::size_t>(r)]) continue;
      const auto& row = rows[static_cast<std::size_t>(r)];
      const std::size_t rn = row.size() - (row.count(n) ? 1 : 0);
      for (const auto& [c, v] : row) {
        if (c >= n) continue;
        const std::size_t score = (rn - 1) * (col_count[static_cast<std::size_t>(c)] - 1);
        const std::size_t vc = cost(v);
        if (pr < 0 || score < best || (score == best && vc < best_cost)) {
          pr = r;
          pc = c;
          best = score;
          best_cost = vc;
        }
      }
    }
    if (pr < 0) break;
    row_done[static_cast<std::size_t>(pr)] = true;
    col_done[static_cast<std::size_t>(pc)] = true;
    pivots.emplace_back(pr, pc);
    const Row& prow = rows[static_cast<std::size_t>(pr)];
    const RatFunc pinv = prow.at(pc).inverse();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (row_done[static_cast<std::size_t>(r)]) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      auto it = row.find(pc);
      if (it == row.end()) continue;
      const RatFunc factor = it->second * pinv;
      for (const auto& [c, v] : prow) {
        auto [jt, inserted] = row.try_emplace(c, RatFunc());
        jt->second -= factor * v;
        if (jt->second.is_zero()) row.erase(jt);
      }
    }
  }

  LinearSolution out;
  out.rank = static_cast<Eigen::Index>(pivots.size());
  if (m == n && out.rank < n) {
    out.status = LinearSolution::Status::Singular;
    return out;
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    if (!row_done[static_cast<std::size_t>(r)] && !rows[static_cast<std::size_t>(r)].empty()) {
      out.status = LinearSolution::Status::NoSolution;
      return out;
    }
  }
  out.x = RatVector::Constant(n, RatFunc());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto& row = rows[static_cast<std::size_t>(it->first)];
    RatFunc acc;
    for (const auto& [c, v] : row) {
      if (c == n) {
        acc += v;
      } else if (c != it->second && !out.x(c).is_zero()) {
        acc -= v * out.x(c);
      }
    }
    out.x(it->second) = acc / row.at(it->second);
  }
  return out;
}

}  // namespace

LinearSolution solve_linear(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  return solve_sparse(a, b);
}

LinearSolution solve_linear_fraction_free(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const Eigen::Index n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  PolyMatrix work = clear_denominators(aug);
  auto pivots = bareiss_echelon(work);

  LinearSolution out;
  Eigen::Index rank_a = 0;
  bool inconsistent = false;
  for (auto c : pivots) {
    if (c < n) {
      ++rank_a;
    } else {
      inconsistent = true;
    }
  }
  out.rank = rank_a;
  if (a.rows() == n && rank_a < n) {
    out.status = LinearSolution::Status::Singular;
    return out;
  }
  if (inconsistent) {
    out.status = LinearSolution::Status::NoSolution;
    return out;
  }
  // Fraction-free back-substitution: y = D x with D the last pivot, so every
  // step is an exact ring division; one reduction per unknown at the end.
  out.x = RatVector::Constant(n, RatFunc());
  if (rank_a == 0) return out;
  const Poly d = work(rank_a - 1, pivots[static_cast<std::size_t>(rank_a - 1)]);
  std::vector<Poly> y(static_cast<std::size_t>(n));
  bool exact = true;
  for (Eigen::Index r = rank_a - 1; r >= 0 && exact; --r) {
    const Eigen::Index pc = pivots[static_cast<std::size_t>(r)];
    Poly acc = d * work(r, n);
    for (Eigen::Index c = pc + 1; c < n; ++c) {
      const auto& yc = y[static_cast<std::size_t>(c)];
      if (work(r, c).is_zero() || yc.is_zero()) continue;
      acc -= work(r, c) * yc;
    }
    auto q = divide_exact(acc, work(r, pc));
    if (!q) {
      exact = false;
      break;
    }
    y[static_cast<std::size_t>(pc)] = std::move(*q);
  }
  if (exact) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& yc = y[static_cast<std::size_t>(c)];
      if (!yc.is_zero()) out.x(c) = RatFunc(yc, d);
    }
    return out;
  }
  for (Eigen::Index r = rank_a - 1; r >= 0; --r) {
    const Eigen::Index pc = pivots[static_cast<std::size_t>(r)];
    RatFunc acc(work(r, n));
    for (Eigen::Index c = pc + 1; c < n; ++c) {
      if (work(r, c).is_zero() || out.x(c).is_zero()) continue;
      acc -= RatFunc(work(r, c)) * out.x(c);
    }
    out.x(pc) = acc / RatFunc(work(r, pc));
  }
  return out;
}

}  // namespace rdf
