#include "oulab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oulab/config.hpp"
#include "oulab/csv.hpp"
#include "oulab/cylapprox.hpp"
#include "oulab/error.hpp"
#include "oulab/grid.hpp"
#include "oulab/inequalities.hpp"
#include "oulab/parallel.hpp"
#include "oulab/rng.hpp"

namespace oulab::cli {

namespace {

constexpr double kGapFloor = 0.98;

std::string location(const std::string& path, const ConfigError& e) {
  std::string s = path;
  if (e.line() > 0) s += ":" + std::to_string(e.line()) + ":" + std::to_string(e.column());
  return s + ": " + e.what();
}

// Loads the config and applies command-line overrides; nullopt after
// printing a diagnostic.
std::optional<RunConfig> prepare(const std::string& path, const CommandOptions& options,
                                 std::ostream& err) {
  try {
    RunConfig cfg = load_config(path);
    if (options.seed) cfg.seed = *options.seed;
    if (options.output_dir) cfg.output_dir = *options.output_dir;
    if (options.jobs) set_thread_count(std::max(1u, *options.jobs));
    return cfg;
  } catch (const ConfigError& e) {
    err << "error: " << location(path, e) << '\n';
    return std::nullopt;
  }
}

std::string no_commas(std::string s) {
  std::replace(s.begin(), s.end(), ',', ' ');
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int r : v) {
    if (!s.empty()) s += 'x';
    s += std::to_string(r);
  }
  return s;
}

struct Row {
  const CheckSpec* spec;
  InequalityReport report;
  std::uint64_t seed;
  Budget budget;
};

std::vector<InequalityReport> run_check(const RunConfig& cfg, const CheckSpec& c,
                                        const Budget& budget, std::uint64_t seed) {
  const ConvexDomain& domain = cfg.domain(c.domain);
  const std::optional<CylFunction> f =
      c.function.empty() ? std::nullopt : std::optional<CylFunction>(cfg.function(c.function).build());
  std::vector<InequalityReport> out;
  if (c.kind == "poincare") {
    out.push_back(check_poincare(*f, domain, budget, seed));
  } else if (c.kind == "log_sobolev") {
    out.push_back(check_logsob(*f, domain, budget, seed));
  } else if (c.kind == "gradient_bound") {
    for (double t : c.times) out.push_back(check_gradient_bound(*f, domain, t, budget));
  } else if (c.kind == "submultiplicative") {
    const CylFunction g = cfg.function(c.g).build();
    const Eigen::MatrixXd panel = c.panel ? *c.panel : default_panel(domain, budget, seed);
    for (std::size_t k = 0; k < c.times.size(); ++k)
      out.push_back(check_submultiplicative(*f, g, domain, c.times[k], panel, budget,
                                            derive_seed(seed, k)));
  } else if (c.kind == "invariance") {
    for (std::size_t k = 0; k < c.times.size(); ++k)
      out.push_back(c.engine == "grid"
                        ? check_invariance_grid(*f, domain, c.times[k], budget)
                        : check_invariance(*f, domain, c.times[k], budget, derive_seed(seed, k)));
  } else if (c.kind == "decay") {
    out = check_decay(*f, domain, c.times, budget);
  } else if (c.kind == "positivity_contraction") {
    for (double t : c.times) out.push_back(check_positivity_and_contraction(*f, domain, t, budget));
  } else if (c.kind == "entropy") {
    const EntropyTrace tr = entropy_trace(
        *f, domain, c.times.empty() ? default_entropy_times() : c.times, budget, c.floor);
    out.push_back(tr.production_report);
    out.push_back(tr.limit_report);
  } else if (c.kind == "factorization") {
    for (std::size_t k = 0; k < c.times.size(); ++k)
      out.push_back(factorization_check(*f, domain, c.free_dims, c.times[k], budget,
                                        derive_seed(seed, k), c.panel));
  } else if (c.kind == "oracle") {
    if (!domain.is_whole_space()) throw ConfigError("oracle checks need a whole-space domain");
    const Eigen::MatrixXd panel = c.panel ? *c.panel : default_panel(domain, budget, seed);
    for (std::size_t k = 0; k < c.times.size(); ++k) {
      auto reports = oracle_triangle(*f, domain.dim(), c.times[k], panel, budget,
                                     derive_seed(seed, k));
      out.insert(out.end(), reports.begin(), reports.end());
    }
  }
  return out;
}

}  // namespace

void write_atomically(const std::string& dir, const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path target = fs::path(dir) / name;
  const fs::path tmp = fs::path(dir) / ("." + name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

int cmd_verify(const std::string& config_path, const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  const auto cfg = prepare(config_path, options, err);
  if (!cfg) return kExitConfig;

  std::vector<Row> rows;
  for (std::size_t i = 0; i < cfg->checks.size(); ++i) {
    const CheckSpec& c = cfg->checks[i];
    const std::uint64_t seed = c.seed ? *c.seed : derive_seed(cfg->seed, i);
    const Budget budget =
        cfg->engine_with(c.engine_overrides).for_dim(cfg->domain(c.domain).dim());
    std::vector<InequalityReport> reports;
    try {
      reports = run_check(*cfg, c, budget, seed);
    } catch (const ConfigError& e) {
      err << "error: " << config_path << ": checks[" << i << "]: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      err << "check " << c.label << " aborted: " << e.what() << '\n';
      InequalityReport r = make_report(c.kind, std::nan(""), std::nan(""), 0.0);
      r.note("error", no_commas(e.what()));
      reports.push_back(std::move(r));
    }
    for (auto& r : reports) {
      if (c.rhs_scale != 1.0) {
        r.rhs *= c.rhs_scale;
        r.settle();
        r.note("rhs_scale", c.rhs_scale);
      }
      rows.push_back({&c, std::move(r), seed, budget});
    }
  }

  std::ostringstream csv_text;
  CsvWriter csv(csv_text, {"name", "lhs", "rhs", "margin", "tolerance", "pass", "check", "kind",
                           "domain", "function", "t", "engine", "resolution", "paths", "samples",
                           "step", "seed", "details"});
  std::vector<InequalityReport> reports;
  for (const Row& row : rows) {
    const InequalityReport& r = row.report;
    const std::string fn = row.spec->g.empty() ? row.spec->function
                                               : row.spec->function + "*" + row.spec->g;
    csv.row({r.name, format_double(r.lhs), format_double(r.rhs), format_double(r.margin),
             format_double(r.tolerance), r.pass ? "true" : "false", no_commas(row.spec->label),
             row.spec->kind, row.spec->domain, fn, r.detail("t"), r.detail("engine"),
             join_ints(row.budget.resolution), std::to_string(row.budget.paths),
             std::to_string(row.budget.samples), format_double(row.budget.step),
             std::to_string(row.seed), no_commas(join_details(r.details))});
    InequalityReport labelled = r;
    labelled.name = row.spec->label + "/" + r.name;
    reports.push_back(std::move(labelled));
  }
  std::ostringstream summary;
  summary << "seed " << cfg->seed << '\n';
  write_summary(summary, reports);

  try {
    write_atomically(cfg->output_dir, "reports.csv", csv_text.str());
    write_atomically(cfg->output_dir, "summary.txt", summary.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  out << summary.str();
  const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return all ? kExitOk : kExitFailed;
}

int cmd_spectrum(const std::string& config_path, const CommandOptions& options,
                 std::ostream& out, std::ostream& err) {
  const auto cfg = prepare(config_path, options, err);
  if (!cfg) return kExitConfig;

  std::ostringstream text;
  CsvWriter csv(text, {"domain", "index", "eigenvalue", "multiplet", "gap", "kernel_deviation",
                       "nodes", "resolution", "truncation_radius"});
  bool ok = true;
  for (const SpectrumSpec& s : cfg->spectrum) {
    const ConvexDomain& domain = cfg->domain(s.domain);
    const Budget b = cfg->engine_with(s.engine_overrides).for_dim(domain.dim());
    try {
      const GridOperator op = grid_build(domain, b.resolution, b.tail_mass);
      const SpectrumResult r = grid_spectrum(op, s.k);
      // Deviation of the leading eigenvector from a constant, relative to
      // the constant sqrt(1 / mass) of unit L2(W) norm.
      const GridFunction& v0 = r.eigenvectors.front();
      const double c = std::sqrt(1.0 / op.mass());
      const double dev = (v0.array() - c).abs().maxCoeff() / c;
      std::vector<std::size_t> group(r.eigenvalues.size());
      for (std::size_t m = 0; m < r.multiplets.size(); ++m)
        for (std::size_t i : r.multiplets[m]) group[i] = m;
      for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
        csv.row({s.domain, std::to_string(i), format_double(r.eigenvalues[i]),
                 std::to_string(group[i]), format_double(r.gap), format_double(dev),
                 std::to_string(op.size()), join_ints(b.resolution),
                 format_double(op.truncation_radius())});
      out << s.domain << ": gap " << format_double(r.gap) << (r.gap >= kGapFloor ? "" : "  (below 0.98)")
          << '\n';
      ok = ok && r.gap >= kGapFloor;
    } catch (const std::exception& e) {
      err << "error: spectrum of " << s.domain << ": " << e.what() << '\n';
      return kExitConfig;
    }
  }
  try {
    write_atomically(cfg->output_dir, "eigenvalues.csv", text.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_evolve(const std::string& config_path, const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  const auto cfg = prepare(config_path, options, err);
  if (!cfg) return kExitConfig;

  std::ostringstream text;
  CsvWriter csv(text, {"domain", "function", "t", "x1", "x2", "value", "resolution", "scheme"});
  for (const EvolveSpec& e : cfg->evolve) {
    const ConvexDomain& domain = cfg->domain(e.domain);
    const Budget b = cfg->engine_with(e.engine_overrides).for_dim(domain.dim());
    try {
      const GridOperator op = grid_build(domain, b.resolution, b.tail_mass);
      const GridFunction f0 = op.sample(cfg->function(e.function).build());
      for (double t : e.times) {
        const GridFunction u = grid_apply(op, f0, t, b.scheme);
        for (std::size_t i = 0; i < op.size(); ++i) {
          const Eigen::VectorXd x = op.node(i);
          csv.row({e.domain, e.function, format_double(t), format_double(x[0]),
                   x.size() > 1 ? format_double(x[1]) : "", format_double(u[static_cast<Eigen::Index>(i)]),
                   join_ints(b.resolution), to_string(b.scheme)});
        }
      }
      out << e.domain << "/" << e.function << ": " << e.times.size() << " snapshots on "
          << op.size() << " nodes\n";
    } catch (const std::exception& ex) {
      err << "error: evolve " << e.domain << "/" << e.function << ": " << ex.what() << '\n';
      return kExitConfig;
    }
  }
  try {
    write_atomically(cfg->output_dir, "evolve.csv", text.str());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_converge(const std::string& config_path, const CommandOptions& options,
                 std::ostream& out, std::ostream& err) {
  const auto cfg = prepare(config_path, options, err);
  if (!cfg) return kExitConfig;
  if (!cfg->converge) {
    err << "error: " << config_path << ": no \"converge\" section\n";
    return kExitConfig;
  }
  const ConvergeSpec& c = *cfg->converge;
  std::ostringstream text;
  try {
    const ConvexDomain ball = ConvexDomain::ball(Eigen::VectorXd::Zero(2), c.radius);
    ConvergenceOptions o;
    o.points = c.points;
    o.paths = c.paths;
    o.step = c.step;
    const auto rows =
        convergence_study(ball, cfg->function(c.function).build(), c.t, c.n, o, cfg->seed);
    CsvWriter csv(text, {"n", "error", "std_error", "excess_mass", "t", "points", "paths", "step",
                         "seed"});
    for (const auto& r : rows) {
      csv.row({std::to_string(r.n), format_double(r.error), format_double(r.std_error),
               format_double(r.excess_mass), format_double(c.t), std::to_string(c.points),
               std::to_string(c.paths), format_double(c.step), std::to_string(cfg->seed)});
      out << "n=" << r.n << " error=" << format_double(r.error) << " se="
          << format_double(r.std_error) << " excess_mass=" << format_double(r.excess_mass) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: converge: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    write_atomically(cfg->output_dir, "convergence.csv", text.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace oulab::cli
