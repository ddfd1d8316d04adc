#ifndef RDF_SUITES_HPP_
#define RDF_SUITES_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rdf/derham.hpp"
#include "rdf/report.hpp"
#include "rdf/singular.hpp"

namespace rdf {

/// Distinct rationals p/q with |p| <= 9, 1 <= q <= 4, drawn from mt19937(seed).
std::vector<RatFunc> sample_points(int n, unsigned seed);

/// Parameters fixed to numbers, keyed by symbol name (kappa, M1.., z1..).
using Assignment = std::map<std::string, mpq_class>;

/// Config::symbolic(n, extra) with `fixed` substituted. Unknown names throw
/// std::invalid_argument.
Config make_config(int n, const Assignment& fixed, const std::vector<std::string>& extra = {});

/// verify_chain_map for every elementary function of order <= bound.
std::vector<Report> chain_map_suite(const Config& cfg, int bound);

/// Identity (a) for b = 1..b_max and (b) for b = 2..b_max.
std::vector<Report> identities_suite(int b_max);

/// X_b (b = 0..b_max) on TypeA(b) and Y_b (b = 1..b_max) on TypeB(b):
/// singularity, grade, leading coefficient 1, agreement with the eps path.
std::vector<Report> singular_suite(int b_max, const std::optional<mpq_class>& kappa0 = std::nullopt);

/// Y_1 = (e/T)v and Y_2 proportional to the F21(1,2) expansion.
std::vector<Report> mff_suite();

/// TypeB(b) and TypeA(b, p) for b = 1..b_max, p = 1..n, on the resonance
/// through cfg (whose points must be numeric).
std::vector<Report> relations_suite(const Config& cfg, int b_max, RelationWeights w);

/// Closed versus direct beta wedge for PoleAt and PolyPow of order <= bound,
/// symbolic n; flatness at n = 2; restricted invariance at fixed resonant data.
std::vector<Report> gauss_manin_suite(int n, int bound);

/// Gram determinant factorization for every grade with p1 + p2 <= total and
/// the (1,1) value 2M(k - M)(k + 2) up to sign.
std::vector<Report> gram_suite(int total);

/// [L_-1, X T^i] = -i X T^(i-1) for X in {e, f, h}, i in -2..2 on components
/// with p1 + p2 <= bound, plus KZ Leibniz samples at n = 2.
std::vector<Report> l_minus_one_suite(int bound);

/// Field canonical form and axioms on seeded random rational functions, PBW
/// dimensions against the generating function for p1 + p2 <= 8, and
/// `fuzz_trials` random commutator checks.
std::vector<Report> kernel_suite(unsigned seed, int fuzz_trials = 200);

}  // namespace rdf

#endif  // RDF_SUITES_HPP_
