#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdf/suites.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rdf;

struct RunSpec {
  std::string command;
  std::optional<int> n;
  std::optional<int> bound;
  std::optional<int> b_max;
  unsigned seed = 1;
  bool symbolic = false;
  std::vector<std::string> numeric;
  std::string weights = "exponential";
  std::string out;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Assignment parse_assignments(const std::vector<std::string>& items) {
  Assignment out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected NAME=VALUE, got '" + item + "'");
    mpq_class q;
    if (q.set_str(item.substr(eq + 1), 10) != 0) throw UsageError("not a rational number: '" + item.substr(eq + 1) + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw UsageError("zero denominator in '" + item + "'");
    out[item.substr(0, eq)] = q;
  }
  return out;
}

int in_range(const std::optional<int>& v, int fallback, int lo, int hi, const char* flag) {
  const int x = v.value_or(fallback);
  if (x < lo || x > hi) {
    throw UsageError(std::string(flag) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

// z from the seed unless pinned; --symbolic leaves every parameter free.
Config point_config(const RunSpec& spec, int n, const Assignment& fixed) {
  Assignment all = fixed;
  if (!spec.symbolic) {
    const auto z = sample_points(n, spec.seed);
    for (int i = 1; i <= n; ++i) {
      all.try_emplace("z" + std::to_string(i), z[static_cast<std::size_t>(i - 1)].constant_value());
    }
  }
  try {
    return make_config(n, all);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<Report> dispatch(const RunSpec& spec, ordered_json& echo) {
  const Assignment fixed = parse_assignments(spec.numeric);
  if (spec.symbolic && !fixed.empty()) throw UsageError("--symbolic and --numeric are exclusive");
  const std::string& cmd = spec.command;
  echo["name"] = cmd;
  auto reject_params = [&] {
    if (!fixed.empty()) throw UsageError(cmd + " works over symbolic M and k only");
  };
  if (cmd == "chain-map") {
    const int n = in_range(spec.n, 2, 1, 3, "--n");
    const int bound = in_range(spec.bound, 4, 0, 6, "--bound");
    const Config cfg = point_config(spec, n, fixed);
    echo["n"] = n;
    echo["bound"] = bound;
    echo["seed"] = spec.seed;
    echo["mode"] = spec.symbolic ? "symbolic" : "numeric";
    echo["parameters"] = ordered_json::object();
    echo["parameters"]["kappa"] = cfg.format(cfg.kappa);
    for (int i = 1; i <= n; ++i) echo["parameters"]["M" + std::to_string(i)] = cfg.format(cfg.m(i));
    for (int i = 1; i <= n; ++i) echo["parameters"]["z" + std::to_string(i)] = cfg.format(cfg.zi(i));
    return chain_map_suite(cfg, bound);
  }
  if (cmd == "identities") {
    reject_params();
    const int b_max = in_range(spec.b_max, 4, 1, 5, "--b-max");
    echo["b_max"] = b_max;
    return identities_suite(b_max);
  }
  if (cmd == "singular") {
    const int b_max = in_range(spec.b_max, 3, 0, 4, "--b-max");
    std::optional<mpq_class> kappa0;
    for (const auto& [name, value] : fixed) {
      if (name != "kappa") throw UsageError("singular accepts only kappa=VALUE");
      kappa0 = value;
    }
    echo["b_max"] = b_max;
    echo["kappa"] = kappa0 ? kappa0->get_str() : "kappa";
    auto reports = singular_suite(b_max, kappa0);
    if (b_max >= 2) {
      for (auto& r : mff_suite()) reports.push_back(std::move(r));
    }
    return reports;
  }
  if (cmd == "relations") {
    const int n = in_range(spec.n, 2, 1, 3, "--n");
    const int b_max = in_range(spec.b_max, 3, 1, 4, "--b-max");
    if (spec.symbolic) throw UsageError("relations needs numeric points; drop --symbolic");
    const Config cfg = point_config(spec, n, fixed);
    RelationWeights w = RelationWeights::Exponential;
    if (spec.weights == "displayed") {
      w = RelationWeights::AsDisplayed;
    } else if (spec.weights != "exponential") {
      throw UsageError("--weights must be 'displayed' or 'exponential'");
    }
    echo["n"] = n;
    echo["b_max"] = b_max;
    echo["seed"] = spec.seed;
    echo["weights"] = spec.weights;
    echo["points"] = ordered_json::array();
    for (int i = 1; i <= n; ++i) echo["points"].push_back(cfg.format(cfg.zi(i)));
    return relations_suite(cfg, b_max, w);
  }
  if (cmd == "gauss-manin") {
    reject_params();
    const int n = in_range(spec.n, 2, 1, 3, "--n");
    const int bound = in_range(spec.bound, 4, 0, 6, "--bound");
    echo["n"] = n;
    echo["bound"] = bound;
    return gauss_manin_suite(n, bound);
  }
  if (cmd == "gram") {
    reject_params();
    const int bound = in_range(spec.bound, 5, 0, 6, "--bound");
    echo["bound"] = bound;
    return gram_suite(bound);
  }
  if (cmd == "l-minus-one") {
    reject_params();
    const int bound = in_range(spec.bound, 4, 0, 5, "--bound");
    echo["bound"] = bound;
    return l_minus_one_suite(bound);
  }
  throw UsageError("unknown command '" + cmd + "'");
}

std::string seconds_str(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  RunSpec spec;
  CLI::App app{"Exact checks for the twisted de Rham complex and affine sl2 Verma modules"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", spec.n, "number of finite points (1..3)");
  app.add_option("--bound", spec.bound, "pole order / degree bound, or grade bound p1 + p2");
  app.add_option("--b-max", spec.b_max, "largest b");
  app.add_option("--seed", spec.seed, "seed for the random points");
  app.add_flag("--symbolic", spec.symbolic, "keep every parameter symbolic, points included");
  app.add_option("--numeric", spec.numeric, "fix parameters, e.g. --numeric kappa=3/2 M1=-1")->expected(1, -1);
  app.add_option("--weights", spec.weights, "relation weights: exponential or displayed");
  app.add_option("--out", spec.out, "write the report here instead of stdout");
  app.add_flag("--timing", spec.timing, "add wall times (makes reports non-reproducible)");
  const std::vector<std::pair<std::string, std::string>> commands{
      {"chain-map", "eta1(d f) = mu(eta0(f)) for elementary f"},
      {"identities", "contragradient identities (a) and (b)"},
      {"singular", "X_b, Y_b singular vectors and the MFF examples"},
      {"relations", "resonance relations with explicit witnesses"},
      {"gauss-manin", "closed beta wedge formulas, flatness, restricted invariance"},
      {"gram", "Shapovalov determinants over Kac-Kazhdan lines"},
      {"l-minus-one", "L_-1 commutators and KZ Leibniz samples"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&spec, name = name] { spec.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ordered_json report;
  std::vector<Report> checks;
  try {
    ordered_json echo;
    checks = dispatch(spec, echo);
    report["command"] = echo;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  int passed = 0;
  report["checks"] = ordered_json::array();
  for (const auto& r : checks) {
    ordered_json c;
    c["name"] = r.name;
    c["status"] = r.pass ? "pass" : "fail";
    c["residual"] = r.detail;
    if (spec.timing) c["seconds"] = seconds_str(r.seconds);
    report["checks"].push_back(c);
    if (r.pass) ++passed;
  }
  const int total = static_cast<int>(checks.size());
  report["summary"] = {{"total", total}, {"passed", passed}, {"failed", total - passed},
                       {"status", passed == total ? "pass" : "fail"}};

  const std::string text = report.dump(2) + "\n";
  if (spec.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(spec.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << spec.out << "\n";
      return 2;
    }
    f << text;
  }
  return passed == total ? 0 : 1;
}
