// One PASS/FAIL line per acceptance criterion. Optional arguments select
// criteria by number, e.g. `acceptance 1 4`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oulab/cylapprox.hpp"
#include "oulab/domain.hpp"
#include "oulab/grid.hpp"
#include "oulab/inequalities.hpp"
#include "oulab/rng.hpp"
#include "oulab/testfn.hpp"

using namespace oulab;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void require(const InequalityReport& r, const std::string& where) {
    std::ostringstream s;
    s << where << " " << r.name << " lhs=" << r.lhs << " rhs=" << r.rhs << " margin=" << r.margin
      << " tol=" << r.tolerance;
    require(r.pass, s.str());
  }
};

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

CylFunction f1(const char* profile, bool bounded = false) {
  return CylFunction::parse(1, Eigen::MatrixXd::Ones(1, 1), profile, bounded);
}

CylFunction f2(const char* profile, bool bounded = false) {
  return CylFunction::parse(2, Eigen::MatrixXd::Identity(2, 2), profile, bounded);
}

CylFunction ridge(const char* profile, double a, double b, bool bounded = false) {
  Eigen::MatrixXd l(1, 2);
  l << a, b;
  l /= l.norm();
  return CylFunction::parse(2, l, profile, bounded);
}

struct Named {
  std::string name;
  ConvexDomain domain;
};

Named line() { return {"line", ConvexDomain::whole_space(1)}; }
Named half_line() { return {"half_line", ConvexDomain::half_line_above(0.0)}; }
Named interval() { return {"interval", ConvexDomain::interval(-1.0, 1.0)}; }
Named ball() { return {"ball", ConvexDomain::ball(vec({0, 0}), 1.0)}; }
Named quadrant() {
  return {"quadrant",
          ConvexDomain::halfspaces(2, {{vec({-1, 0}), 0.0}, {vec({0, -1}), 0.0}})};
}

// Mesh resolution per domain: 1D at 400 cells (800 on unbounded lines for
// the spectrum), 2D at 48 per axis.
Budget grid_budget(const ConvexDomain& d, int res1 = 400, int res2 = 48) {
  Budget b;
  b.resolution = {d.dim() == 1 ? res1 : res2};
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Spectral gap.
void spectral_gap(Outcome& out) {
  double worst_gap = INFINITY;
  double worst_kernel = 0.0;
  for (const auto& [name, d] : {line(), half_line(), interval(), quadrant(), ball()}) {
    const bool unbounded = d.dim() == 1 && std::isfinite(truncation_box(d, 1e-12).radius);
    const auto op = grid_build(d, grid_budget(d, unbounded ? 800 : 400).resolution);
    const auto s = grid_spectrum(op, 4);
    const auto& v = s.eigenvectors[0];
    const double m = op.mean(v);
    const double kernel = (v.array() - m).abs().maxCoeff() / std::abs(m);
    worst_kernel = std::max(worst_kernel, kernel);
    worst_gap = std::min(worst_gap, s.gap);
    out.require(std::abs(s.eigenvalues[0]) <= 1e-6, name + ": lambda_1 = " + std::to_string(s.eigenvalues[0]));
    out.require(kernel <= 1e-6, name + ": kernel vector not constant");
    out.require(s.eigenvalues[1] <= -1.0 + 0.02, name + ": lambda_2 = " + std::to_string(s.eigenvalues[1]));
    if (name == "line") {
      const double hermite[] = {0.0, -1.0, -2.0, -3.0};
      double dev = 0.0;
      for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(s.eigenvalues[static_cast<std::size_t>(k)] - hermite[k]));
      out.require(dev <= 1e-3, "line: Hermite deviation " + std::to_string(dev));
      out.note << "line_hermite_dev=" << dev << " ";
    }
  }
  out.note << "min_gap=" << worst_gap << " max_kernel_dev=" << worst_kernel;
}

// 2. Poincare.
void poincare(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Budget b;  // 1e6 restricted samples
  struct Case {
    Named d;
    CylFunction f;
    std::string label;
  };
  const std::vector<Case> cases = {
      {line(), f1("v1"), "x"},
      {line(), f1("(pow v1 2)"), "x2"},
      {line(), f1("(tanh v1)", true), "tanh"},
      {line(), f1("(sin (mul 3 v1))", true), "sin3x"},
      {half_line(), f1("v1"), "x"},
      {half_line(), f1("(pow v1 2)"), "x2"},
      {interval(), f1("v1"), "x"},
      {interval(), f1("(pow v1 2)"), "x2"},
      {interval(), f1("(exp v1)"), "exp"},
      {ball(), ridge("(tanh v1)", 1, 2, true), "ridge_tanh"},
      {ball(), f2("(add (pow v1 2) (mul v1 v2))"), "x2_plus_xy"},
      {quadrant(), f2("(mul v1 v2)"), "xy"},
      {quadrant(), f2("(add (pow v1 2) (mul v1 v2))"), "x2_plus_xy"},
  };
  std::uint64_t i = 0;
  double sharp_ratio = 0.0;
  for (const auto& c : cases) {
    const auto r = check_poincare(c.f, c.d.domain, b, derive_seed(kSeed, 200 + i++));
    out.require(r, c.d.name + "/" + c.label);
    if (c.d.name == "line" && c.label == "x") {
      sharp_ratio = std::abs(r.margin) / r.tolerance;
      out.require(sharp_ratio <= 2.0, "sharp case |margin| > 2 tol");
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  out.note << "pairs=" << cases.size() << " samples=" << b.samples
           << " sharp_|margin|/tol=" << sharp_ratio << " runtime_s=" << secs;
}

// 3. Log-Sobolev.
void log_sobolev(Outcome& out) {
  Budget b;
  struct Case {
    Named d;
    CylFunction f;
    std::string label;
  };
  const std::vector<Case> cases = {
      {line(), f1("(exp (mul 0.5 v1))"), "exp_half"},
      {line(), f1("(add 1 (tanh v1))", true), "one_plus_tanh"},
      {line(), f1("(add 2 (sin (mul 3 v1)))", true), "two_plus_sin3x"},
      {half_line(), f1("(add 1 (tanh v1))", true), "one_plus_tanh"},
      {half_line(), f1("(add 1 (pow v1 2))"), "one_plus_x2"},
      {interval(), f1("(add 2 v1)"), "two_plus_x"},
      {interval(), f1("(exp v1)"), "exp"},
      {{"lower_half", ConvexDomain::halfspaces(1, {{vec({1}), 0.0}})}, f1("(add 1 (tanh v1))", true), "one_plus_tanh"},
      {ball(), ridge("(add 2 (tanh v1))", 1, 2, true), "two_plus_ridge"},
      {quadrant(), f2("(exp (mul -0.25 (add (pow v1 2) (pow v2 2))))", true), "gauss_bump"},
  };
  std::uint64_t i = 0;
  for (const auto& c : cases)
    out.require(check_logsob(c.f, c.d.domain, b, derive_seed(kSeed, 300 + i++)), c.d.name + "/" + c.label);

  const double c = 3.0;
  const auto r = check_logsob(CylFunction::constant(1, c), ConvexDomain::whole_space(1), b, kSeed);
  const double dev = std::max(std::abs(r.lhs - r.rhs), std::abs(r.lhs - c * c * std::log(c)));
  out.require(dev <= 1e-9, "constant case deviation " + std::to_string(dev));
  out.note << "pairs=" << cases.size() << " constant_dev=" << dev;
}

// 4. Gradient bound.
void gradient_bound(Outcome& out) {
  const std::vector<std::pair<Named, std::vector<std::pair<std::string, CylFunction>>>> cases = {
      {interval(),
       {{"x2", f1("(pow v1 2)")}, {"tanh2x", f1("(tanh (mul 2 v1))", true)}, {"sin3x", f1("(sin (mul 3 v1))", true)}}},
      {ball(),
       {{"ridge_tanh", ridge("(tanh v1)", 1, 2, true)}, {"x2_plus_xy", f2("(add (pow v1 2) (mul v1 v2))")}}},
  };
  int nodes_checked = 0;
  for (const auto& [d, fs] : cases)
    for (const auto& [label, f] : fs)
      for (double t : {0.1, 0.5, 1.0}) {
        const auto r = check_gradient_bound(f, d.domain, t, grid_budget(d.domain));
        out.require(r, d.name + "/" + label + " t=" + std::to_string(t));
        ++nodes_checked;
      }
  double sharp = 0.0;
  for (double t : {0.1, 0.5, 1.0}) {
    const auto r = check_gradient_bound(CylFunction::coordinate(1, 0), ConvexDomain::whole_space(1), t, Budget{});
    out.require(r, "line/x t=" + std::to_string(t));
    sharp = std::max(sharp, std::abs(r.margin) / r.tolerance);
    out.require(std::abs(r.margin) <= 2.0 * r.tolerance, "linear case not sharp");
  }
  out.note << "checks=" << nodes_checked << " linear_max_|margin|/tol=" << sharp;
}

// 5. Submultiplicativity.
void submultiplicative(Outcome& out) {
  Budget b;  // 1e5 paths, 20 panel points
  const auto x = f1("v1");
  const auto th = f1("(tanh v1)", true);
  const auto one = CylFunction::constant(1, 1.0);
  const auto sin3 = f1("(sin (mul 3 v1))", true);
  const auto x2 = f1("(pow v1 2)");
  const auto bump = f1("(exp (neg (pow v1 2)))", true);

  const auto iv = interval();
  const auto panel_iv = default_panel(iv.domain, b, derive_seed(kSeed, 500));
  const auto r_iv = check_submultiplicative({{x, th}, {x2, sin3}, {bump, x}, {x, x}, {x, one}}, iv.domain, 0.5,
                                            panel_iv, b, derive_seed(kSeed, 501));
  const auto hl = half_line();
  const auto panel_hl = default_panel(hl.domain, b, derive_seed(kSeed, 502));
  const auto r_hl = check_submultiplicative({{th, sin3}, {x2, bump}}, hl.domain, 0.5, panel_hl, b,
                                            derive_seed(kSeed, 503));
  const char* labels_iv[] = {"x*tanh", "x2*sin3x", "bump*x", "g=f", "g=1"};
  for (std::size_t k = 0; k < r_iv.size(); ++k) out.require(r_iv[k], std::string("interval/") + labels_iv[k]);
  const char* labels_hl[] = {"tanh*sin3x", "x2*bump"};
  for (std::size_t k = 0; k < r_hl.size(); ++k) out.require(r_hl[k], std::string("half_line/") + labels_hl[k]);

  // g = f is an identity; g = 1 is Jensen with a nonnegative margin.
  const auto& eq = r_iv[3];
  out.require(std::abs(eq.margin) <= eq.tolerance, "g=f not equality");
  out.require(r_iv[4].margin >= 0.0, "g=1 Jensen margin negative");
  out.note << "pairs=7 points=" << panel_iv.cols() << " paths=" << b.paths << " g=f_margin=" << eq.margin
           << " g=1_margin=" << r_iv[4].margin;
}

// 6. Invariance.
void invariance(Outcome& out) {
  struct Case {
    Named d;
    CylFunction f;
  };
  const std::vector<Case> cases = {
      {line(), f1("(pow v1 2)")},
      {half_line(), f1("v1")},
      {interval(), f1("v1")},
      {ball(), f2("(add (pow v1 2) (mul v1 v2))")},
      {quadrant(), f2("(mul v1 v2)")},
  };
  double worst_grid = 0.0;
  std::uint64_t i = 0;
  for (const auto& c : cases) {
    const auto g = check_invariance_grid(c.f, c.d.domain, 1.0, grid_budget(c.d.domain));
    out.require(g, c.d.name + " grid");
    worst_grid = std::max(worst_grid, g.lhs);
    Budget b;  // 1e5 starting points, one path each
    out.require(check_invariance(c.f, c.d.domain, c.d.domain.is_whole_space() ? 0.7 : 1.0, b, derive_seed(kSeed, 600 + i++)),
                c.d.name + " mc");
  }
  out.note << "domains=5 grid_max_defect=" << worst_grid;
}

// 7. Positivity and contraction.
void positivity(Outcome& out) {
  struct Case {
    Named d;
    CylFunction f;
    std::string label;
  };
  const std::vector<Case> cases = {
      {interval(), f1("(pow v1 2)"), "x2"},
      {line(), f1("(exp (neg (pow v1 2)))", true), "bump"},
      {half_line(), f1("(add 1 (tanh v1))", true), "one_plus_tanh"},
      {ball(), ridge("(pow (tanh v1) 2)", 1, 2, true), "ridge_tanh2"},
      {quadrant(), f2("(mul v1 v2)"), "xy"},
  };
  double worst = 0.0;
  for (const auto& c : cases)
    for (double t : {0.1, 0.5, 1.0}) {
      const auto r = check_positivity_and_contraction(c.f, c.d.domain, t, grid_budget(c.d.domain));
      out.require(r, c.d.name + "/" + c.label);
      worst = std::max(worst, r.lhs);
    }
  out.note << "functions=5 max_violation=" << worst;
}

// 8. Decay.
void decay(Outcome& out) {
  struct Case {
    Named d;
    CylFunction f;
  };
  const std::vector<Case> cases = {
      {line(), f1("(add (pow v1 2) (tanh v1))")},
      {half_line(), f1("(pow v1 2)")},
      {interval(), f1("(add v1 (pow v1 2))")},
      {ball(), f2("(add (pow v1 2) (mul v1 v2))")},
      {quadrant(), f2("(add v1 (mul v1 v2))")},
  };
  const std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  for (const auto& c : cases)
    for (const auto& r : check_decay(c.f, c.d.domain, times, grid_budget(c.d.domain)))
      out.require(r, c.d.name);
  double sharp = 0.0;
  for (const auto& r : check_decay(CylFunction::coordinate(1, 0), ConvexDomain::whole_space(1), times, Budget{})) {
    out.require(r, "line/x");
    sharp = std::max(sharp, std::abs(r.lhs - r.rhs));
  }
  out.require(sharp <= 1e-4, "eigenfunction case off by " + std::to_string(sharp));
  out.note << "domains=5 times=4 eigenfunction_max_|lhs-rhs|=" << sharp;
}

// 9. Factorization.
void factorization(Outcome& out) {
  Budget b;
  b.paths = 20'000;
  std::uint64_t i = 0;
  double worst = 0.0;
  for (const auto& base : {line(), interval()})
    for (int free_dims : {1, 2}) {
      const auto r = factorization_check(f1("(tanh (mul 2 v1))", true), base.domain, free_dims, 0.5, b,
                                         derive_seed(kSeed, 900 + i++));
      out.require(r, base.name + " x R^" + std::to_string(free_dims));
      worst = std::max(worst, r.lhs / r.tolerance);
    }
  out.note << "configs=4 points=" << b.panel_size << " paths=" << b.paths << " max_gap/tol=" << worst;
}

// 10. Convergence study.
void convergence(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceOptions options;  // 200 points x 500 paths = 1e5 paths per domain
  const auto rows = convergence_study(ConvexDomain::ball(vec({0, 0}), 1.0), ridge("(tanh (mul 2 v1))", 1, 0, true),
                                      0.5, {4, 8, 16, 32, 64}, options, derive_seed(kSeed, 1000));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& a = rows[k - 1];
    const auto& c = rows[k];
    const double floor = 3.0 * std::max(a.std_error, c.std_error);
    out.require(c.error <= a.error + floor, "e_n rises at n=" + std::to_string(c.n));
    out.require(c.excess_mass < a.excess_mass, "excess mass not decreasing at n=" + std::to_string(c.n));
  }
  const double secs = seconds_since(t0);
  out.require(secs < 300.0, "runtime " + std::to_string(secs) + " s");
  out.note << "e_n=";
  for (const auto& r : rows) out.note << r.error << (r.n == rows.back().n ? "" : "/");
  out.note << " paths=" << options.points * options.paths << " runtime_s=" << secs;
}

// 11. Entropy production.
void entropy(Outcome& out) {
  const auto d = interval();
  const auto times = default_entropy_times();
  double worst = INFINITY;
  for (const auto& [label, f] : std::vector<std::pair<std::string, CylFunction>>{
           {"two_plus_x", f1("(add 2 v1)")},
           {"exp", f1("(exp v1)")},
           {"one_half_plus_sin3x", f1("(add 1.5 (sin (mul 3 v1)))", true)}}) {
    const auto tr = entropy_trace(f, d.domain, times, grid_budget(d.domain), 0.1);
    out.require(tr.times.size() == 40, label + ": time grid");
    out.require(tr.production_report, label);
    out.require(tr.limit_report, label);
    worst = std::min(worst, tr.production_report.margin);
  }
  out.note << "functions=3 steps=" << times.size() << " min_production_margin=" << worst;
}

// 12. Oracle triangle.
void oracle(Outcome& out) {
  Budget b;
  b.resolution = {800};
  b.paths = 20'000;
  b.panel_size = 10;
  const auto panel = default_panel(ConvexDomain::whole_space(1), b, derive_seed(kSeed, 1200));
  std::uint64_t i = 0;
  for (const auto& [label, f] : std::vector<std::pair<std::string, CylFunction>>{
           {"x", f1("v1")},
           {"x2", f1("(pow v1 2)")},
           {"tanh", f1("(tanh v1)", true)},
           {"sin3x", f1("(sin (mul 3 v1))", true)},
           {"bump", f1("(exp (neg (pow v1 2)))", true)}})
    for (double t : {0.2, 1.0})
      for (const auto& r : oracle_triangle(f, 1, t, panel, b, derive_seed(kSeed, 1201 + i++)))
        out.require(r, label + " t=" + std::to_string(t));
  out.note << "functions=5 times=2 points=" << panel.cols() << " paths=" << b.paths;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"spectral_gap", spectral_gap},   {"poincare", poincare},
      {"log_sobolev", log_sobolev},     {"gradient_bound", gradient_bound},
      {"submultiplicative", submultiplicative}, {"invariance", invariance},
      {"positivity_contraction", positivity},   {"decay", decay},
      {"factorization", factorization}, {"convergence", convergence},
      {"entropy_production", entropy},  {"oracle_triangle", oracle},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::stoi(argv[a]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (out.pass ? "PASS " : "FAIL ") << id << " " << criteria[k].first << " " << out.note.str()
              << " time_s=" << seconds_since(t0) << "\n";
    for (const auto& f : out.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
