#include "oulab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oulab/error.hpp"
#include "oulab/mehler.hpp"
#include "oulab/montecarlo.hpp"
#include "oulab/parallel.hpp"
#include "oulab/rng.hpp"
#include "oulab/sampling.hpp"
#include "oulab/stats.hpp"

namespace oulab {

namespace {

constexpr double kLogClip = 1e-12;
constexpr double kGridExact = 1e-9;
constexpr double kGridOrder = 1e-10;

std::string resolution_text(const std::vector<int>& res) {
  std::string s;
  for (int r : res) {
    if (!s.empty()) s += 'x';
    s += std::to_string(r);
  }
  return s;
}

double max_spacing_sq(const GridOperator& op) {
  double s = 0.0;
  for (int a = 0; a < op.dim(); ++a) s = std::max(s, op.spacing(a) * op.spacing(a));
  return s;
}

void note_grid(InequalityReport& r, const GridOperator& op, const Budget& budget) {
  r.note("engine", "grid");
  r.note("scheme", to_string(budget.scheme));
  r.note("resolution", resolution_text(budget.resolution));
  r.note("nodes", static_cast<double>(op.size()));
  r.note("truncation_radius", op.truncation_radius());
}

void note_mc(InequalityReport& r, const Budget& budget, double allowance) {
  r.note("engine", "monte_carlo");
  r.note("paths", static_cast<double>(budget.paths));
  r.note("step", budget.step);
  r.note("bias_constant", budget.bias_constant);
  r.note("bias_allowance", allowance);
}

struct SampleValues {
  std::vector<double> f;
  std::vector<double> grad_sq;
  double acceptance = 1.0;
};

SampleValues evaluate_samples(const CylFunction& f, const ConvexDomain& domain,
                              std::size_t count, std::uint64_t seed) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const auto sample = gauss::restricted_sample(domain, count, seed);
  SampleValues out;
  out.acceptance = sample.acceptance_rate;
  const std::size_t n = static_cast<std::size_t>(sample.points.cols());
  out.f.resize(n);
  out.grad_sq.resize(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Eigen::VectorXd x = sample.points.col(static_cast<Eigen::Index>(i));
      out.f[i] = f.eval(x);
      out.grad_sq[i] = f.gradient(x).squaredNorm();
    }
  });
  return out;
}

GridOperator build(const ConvexDomain& domain, const Budget& budget) {
  return grid_build(domain, budget.resolution, budget.tail_mass);
}

// Central-difference gradient norm at an interior node.
double grid_gradient_norm(const GridOperator& op, const GridFunction& u, std::size_t i) {
  double sq = 0.0;
  for (int a = 0; a < op.dim(); ++a) {
    const long up = op.neighbour(i, a, +1);
    const long down = op.neighbour(i, a, -1);
    const double d = (u[up] - u[down]) / (2.0 * op.spacing(a));
    sq += d * d;
  }
  return std::sqrt(sq);
}

double weighted_norm(const GridOperator& op, const GridFunction& u) {
  return std::sqrt(std::max(0.0, op.inner(u, u) / op.mass()));
}

double entropy_of(const GridOperator& op, const GridFunction& u) {
  GridFunction v(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double x = std::max(u[i], kLogClip);
    v[i] = u[i] * std::log(x);
  }
  return op.mean(v);
}

}  // namespace

double lipschitz_bound(const CylFunction& f, const ConvexDomain& domain, double tail_mass) {
  const Box box = truncation_box(domain, tail_mass);
  double sq = 0.0;
  for (const Interval& g : f.enclose_gradient(box)) {
    const double m = std::max(std::abs(g.lo), std::abs(g.hi));
    sq += m * m;
  }
  return std::sqrt(sq);
}

bool reflects(const ConvexDomain& domain) {
  if (domain.is_whole_space()) return false;
  if (const auto* p = std::get_if<Product>(&domain.shape())) return reflects(*p->base);
  return true;
}

double bias_allowance(const CylFunction& f, const ConvexDomain& domain, const Budget& budget) {
  const double lip = lipschitz_bound(f, domain, budget.tail_mass);
  if (lip == 0.0) return 0.0;
  const double rate = reflects(domain) ? std::sqrt(budget.step) : budget.step;
  return budget.bias_constant * lip * rate;
}

Eigen::MatrixXd default_panel(const ConvexDomain& domain, const Budget& budget,
                              std::uint64_t seed) {
  return gauss::restricted_sample(domain, budget.panel_size, derive_seed(seed, 0x9a4e1)).points;
}

InequalityReport check_poincare(const CylFunction& f, const ConvexDomain& domain,
                                const Budget& budget, std::uint64_t seed) {
  const SampleValues s = evaluate_samples(f, domain, budget.samples, seed);
  const std::size_t n = s.f.size();
  const double mean = compensated_mean(s.f);
  std::vector<double> dev_sq(n), influence(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.f[i] - mean;
    dev_sq[i] = d * d;
    influence[i] = s.grad_sq[i] - dev_sq[i];
  }
  const double variance = compensated_mean(dev_sq);
  const Estimate energy = mean_estimate(s.grad_sq);
  const Estimate diff = mean_estimate(influence);
  InequalityReport r = make_report("poincare", variance, energy.value, 3.0 * diff.std_error);
  r.note("samples", static_cast<double>(n));
  r.note("acceptance_rate", s.acceptance);
  r.note("energy_se", energy.std_error);
  r.note("margin_se", diff.std_error);
  r.note("tolerance_rule", "3*margin_se");
  return r;
}

InequalityReport check_logsob(const CylFunction& f, const ConvexDomain& domain,
                              const Budget& budget, std::uint64_t seed) {
  const SampleValues s = evaluate_samples(f, domain, budget.samples, seed);
  const std::size_t n = s.f.size();
  std::vector<double> sq(n), ent(n);
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(s.f[i]);
    if (a < kLogClip) ++clipped;
    sq[i] = s.f[i] * s.f[i];
    ent[i] = sq[i] == 0.0 ? 0.0 : sq[i] * std::log(std::max(a, kLogClip));
  }
  const double norm_sq = compensated_mean(sq);
  const double lhs = compensated_mean(ent);
  const double energy = compensated_mean(s.grad_sq);
  const double log_norm = norm_sq > 0.0 ? 0.5 * std::log(norm_sq) : 0.0;
  const double rhs = energy + norm_sq * log_norm;

  // Influence of the margin: d/dN (N/2) log N = (log N + 1) / 2.
  const double dn = norm_sq > 0.0 ? log_norm + 0.5 : 0.0;
  std::vector<double> influence(n);
  for (std::size_t i = 0; i < n; ++i) influence[i] = s.grad_sq[i] + dn * sq[i] - ent[i];
  const Estimate m = mean_estimate(influence);

  InequalityReport r = make_report("log_sobolev", lhs, rhs, 3.0 * m.std_error);
  r.note("samples", static_cast<double>(n));
  r.note("acceptance_rate", s.acceptance);
  r.note("norm", std::sqrt(norm_sq));
  r.note("energy", energy);
  r.note("clipped", static_cast<double>(clipped));
  r.note("margin_se", m.std_error);
  r.note("lhs2", 2.0 * lhs);
  r.note("rhs2", 2.0 * rhs);
  r.note("tolerance_rule", "3*margin_se");
  return r;
}

InequalityReport check_gradient_bound(const CylFunction& f, const ConvexDomain& domain, double t,
                                      const Budget& budget) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const GridOperator op = build(domain, budget);
  const GridFunction u = grid_apply(op, op.sample(f), t, budget.scheme);
  const GridFunction g =
      op.sample([&](const Eigen::VectorXd& x) { return f.gradient_norm(x); });
  const GridFunction tg = grid_apply(op, g, t, budget.scheme);
  const double decay = std::exp(-t);

  double worst = std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0, worst_rhs = 0.0;
  std::size_t checked = 0;
  long worst_node = -1;
  for (std::size_t i = 0; i < op.size(); ++i) {
    if (!op.interior(i)) continue;
    ++checked;
    const double lhs = grid_gradient_norm(op, u, i);
    const double rhs = decay * tg[static_cast<Eigen::Index>(i)];
    if (rhs - lhs < worst) {
      worst = rhs - lhs;
      worst_lhs = lhs;
      worst_rhs = rhs;
      worst_node = static_cast<long>(i);
    }
  }
  if (checked == 0) throw ResolutionTooCoarse("no interior nodes");
  const double scale = g.cwiseAbs().maxCoeff();
  const double tol = budget.grid_constant * max_spacing_sq(op) * scale + kGridOrder;
  InequalityReport r = make_report("gradient_bound", worst_lhs, worst_rhs, tol);
  note_grid(r, op, budget);
  r.note("t", t);
  r.note("interior_nodes", static_cast<double>(checked));
  r.note("worst_node", static_cast<double>(worst_node));
  r.note("grid_constant", budget.grid_constant);
  r.note("tolerance_rule", "grid_constant*dx^2*max|grad f|");
  return r;
}

std::vector<InequalityReport> check_submultiplicative(
    const std::vector<std::pair<CylFunction, CylFunction>>& pairs, const ConvexDomain& domain,
    double t, const Eigen::MatrixXd& panel, const Budget& budget, std::uint64_t seed) {
  for (const auto& [f, g] : pairs) {
    if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
    if (g.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), g.dim());
  }
  if (panel.rows() != domain.dim())
    throw DimensionMismatch(domain.dim(), static_cast<int>(panel.rows()));
  if (panel.cols() == 0) throw std::invalid_argument("empty panel");

  std::vector<InequalityReport> worst(pairs.size());
  std::vector<double> worst_slack(pairs.size(), std::numeric_limits<double>::infinity());
  for (Eigen::Index p = 0; p < panel.cols(); ++p) {
    const Eigen::MatrixXd ends =
        reflected_endpoints(domain, panel.col(p), t, budget.paths, budget.step,
                            derive_seed(seed, static_cast<std::uint64_t>(p)));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::vector<double> fv = evaluate_columns(pairs[k].first, ends);
      const std::vector<double> gv = evaluate_columns(pairs[k].second, ends);
      const std::size_t n = fv.size();
      std::vector<double> fg(n), ff(n), gg(n);
      for (std::size_t i = 0; i < n; ++i) {
        fg[i] = fv[i] * gv[i];
        ff[i] = fv[i] * fv[i];
        gg[i] = gv[i] * gv[i];
      }
      const double a = compensated_mean(fg);
      const double b = compensated_mean(ff);
      const double c = compensated_mean(gg);
      // Influence of B C - A^2.
      std::vector<double> psi(n);
      for (std::size_t i = 0; i < n; ++i) psi[i] = c * ff[i] + b * gg[i] - 2.0 * a * fg[i];
      const double se = mean_estimate(psi).std_error;
      const double lhs = a * a;
      const double rhs = b * c;
      const double tol = 3.0 * se + 1e-12 * std::abs(rhs);
      const double slack = rhs - lhs + tol;
      if (slack < worst_slack[k]) {
        worst_slack[k] = slack;
        worst[k] = make_report("submultiplicative", lhs, rhs, tol);
        worst[k].note("worst_point", static_cast<double>(p));
        worst[k].note("margin_se", se);
      }
    }
  }
  for (auto& r : worst) {
    note_mc(r, budget, 0.0);
    r.note("t", t);
    r.note("panel_points", static_cast<double>(panel.cols()));
    r.note("tolerance_rule", "3*margin_se+1e-12*rhs");
  }
  return worst;
}

InequalityReport check_submultiplicative(const CylFunction& f, const CylFunction& g,
                                         const ConvexDomain& domain, double t,
                                         const Eigen::MatrixXd& panel, const Budget& budget,
                                         std::uint64_t seed) {
  return check_submultiplicative({{f, g}}, domain, t, panel, budget, seed).front();
}

InequalityReport check_invariance(const CylFunction& f, const ConvexDomain& domain, double t,
                                  const Budget& budget, std::uint64_t seed) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const auto starts = gauss::restricted_sample(domain, budget.paths, derive_seed(seed, 0));
  const Eigen::MatrixXd ends =
      reflected_endpoints_from(domain, starts.points, t, budget.step, derive_seed(seed, 1));
  const std::vector<double> before = evaluate_columns(f, starts.points);
  const std::vector<double> after = evaluate_columns(f, ends);
  std::vector<double> diff(before.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = after[i] - before[i];
  const Estimate d = mean_estimate(diff);
  const double allowance = bias_allowance(f, domain, budget);
  InequalityReport r = make_report("invariance", std::abs(d.value), 0.0,
                                   3.0 * d.std_error + allowance);
  note_mc(r, budget, allowance);
  r.note("t", t);
  r.note("mean_before", compensated_mean(before));
  r.note("mean_after", compensated_mean(after));
  r.note("paired_se", d.std_error);
  r.note("acceptance_rate", starts.acceptance_rate);
  r.note("tolerance_rule", "3*paired_se+bias_allowance");
  return r;
}

InequalityReport check_invariance_grid(const CylFunction& f, const ConvexDomain& domain,
                                       double t, const Budget& budget) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const GridOperator op = build(domain, budget);
  const GridFunction f0 = op.sample(f);
  const GridFunction ft = grid_apply(op, f0, t, budget.scheme);
  const double before = op.mean(f0);
  const double after = op.mean(ft);
  const double tol = kGridExact * std::max(1.0, weighted_norm(op, f0));
  InequalityReport r = make_report("invariance_grid", std::abs(after - before), 0.0, tol);
  note_grid(r, op, budget);
  r.note("t", t);
  r.note("mean_before", before);
  r.note("mean_after", after);
  return r;
}

std::vector<InequalityReport> check_decay(const CylFunction& f, const ConvexDomain& domain,
                                          const std::vector<double>& times, const Budget& budget) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const GridOperator op = build(domain, budget);
  const GridFunction f0 = op.sample(f);
  const double m = op.mean(f0);
  const double norm = weighted_norm(op, f0);
  std::vector<InequalityReport> out;
  for (double t : times) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    const GridFunction ft = grid_apply(op, f0, t, budget.scheme);
    const GridFunction centred = ft.array() - m;
    InequalityReport r = make_report("decay", weighted_norm(op, centred), std::exp(-t) * norm,
                                     1e-4 * norm);
    note_grid(r, op, budget);
    r.note("t", t);
    r.note("mean", m);
    r.note("norm", norm);
    r.note("tolerance_rule", "1e-4*norm");
    out.push_back(std::move(r));
  }
  return out;
}

InequalityReport check_positivity_and_contraction(const CylFunction& f,
                                                  const ConvexDomain& domain, double t,
                                                  const Budget& budget) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  const GridOperator op = build(domain, budget);
  const GridFunction f0 = op.sample(f);
  const GridFunction ft = grid_apply(op, f0, t, budget.scheme);
  const double fmin = f0.minCoeff(), fmax = f0.maxCoeff();
  const double tmin = ft.minCoeff(), tmax = ft.maxCoeff();
  const double over = tmax - fmax;
  const double under = fmin - tmin;
  const double positivity = fmin >= 0.0 ? -tmin : -std::numeric_limits<double>::infinity();
  const double l2 = weighted_norm(op, ft) - weighted_norm(op, f0);
  const double violation = std::max({over, under, positivity, l2});
  InequalityReport r = make_report("positivity_contraction", violation, 0.0, kGridOrder);
  note_grid(r, op, budget);
  r.note("t", t);
  r.note("min_f", fmin);
  r.note("max_f", fmax);
  r.note("min_Tf", tmin);
  r.note("max_Tf", tmax);
  r.note("l2_f", weighted_norm(op, f0));
  r.note("l2_Tf", weighted_norm(op, ft));
  r.note("positivity_leg", fmin >= 0.0 ? "on" : "off");
  return r;
}

std::vector<InequalityReport> oracle_triangle(const CylFunction& f, int dim, double t,
                                              const Eigen::MatrixXd& panel, const Budget& budget,
                                              std::uint64_t seed) {
  if (f.dim() != dim) throw DimensionMismatch(dim, f.dim());
  if (panel.rows() != dim) throw DimensionMismatch(dim, static_cast<int>(panel.rows()));
  if (panel.cols() == 0) throw std::invalid_argument("empty panel");
  const ConvexDomain space = ConvexDomain::whole_space(dim);
  const GridOperator op = build(space, budget);
  const GridFunction u = grid_apply(op, op.sample(f), t, budget.scheme);
  const double lip = lipschitz_bound(f, space, budget.tail_mass);
  const double grid_allow = budget.grid_constant * max_spacing_sq(op) * std::max(1.0, lip);
  const double bias = bias_allowance(f, space, budget);
  MehlerOptions mo;
  mo.quad_order = budget.quad_order;

  const char* names[3] = {"mehler_grid", "mehler_mc", "grid_mc"};
  std::vector<InequalityReport> worst(3);
  std::vector<double> worst_excess(3, -std::numeric_limits<double>::infinity());
  for (Eigen::Index p = 0; p < panel.cols(); ++p) {
    const Eigen::VectorXd x = panel.col(p);
    const double m = mehler_apply(f, t, x, mo).value;
    const double g = op.interpolate(u, x);
    const SemigroupEstimate mc = mc_apply(f, space, t, x, budget.paths, budget.step,
                                          derive_seed(seed, static_cast<std::uint64_t>(p)));
    const double se = mc.std_error.value_or(0.0);
    const double gaps[3] = {std::abs(m - g), std::abs(m - mc.value), std::abs(g - mc.value)};
    const double tols[3] = {grid_allow, 3.0 * se + bias, 3.0 * se + bias + grid_allow};
    for (int k = 0; k < 3; ++k) {
      if (gaps[k] - tols[k] > worst_excess[static_cast<std::size_t>(k)]) {
        worst_excess[static_cast<std::size_t>(k)] = gaps[k] - tols[k];
        InequalityReport r = make_report(names[k], gaps[k], 0.0, tols[k]);
        r.note("worst_point", static_cast<double>(p));
        r.note("mehler", m);
        r.note("grid", g);
        r.note("mc", mc.value);
        r.note("mc_se", se);
        worst[static_cast<std::size_t>(k)] = std::move(r);
      }
    }
  }
  for (auto& r : worst) {
    note_grid(r, op, budget);
    r.note("paths", static_cast<double>(budget.paths));
    r.note("step", budget.step);
    r.note("quad_order", static_cast<double>(budget.quad_order));
    r.note("t", t);
    r.note("grid_allowance", grid_allow);
    r.note("bias_allowance", bias);
  }
  return worst;
}

std::vector<double> default_entropy_times() {
  std::vector<double> t(40);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = 0.1 * static_cast<double>(k);
  return t;
}

EntropyTrace entropy_trace(const CylFunction& f, const ConvexDomain& domain,
                           const std::vector<double>& times, const Budget& budget,
                           double floor, std::optional<double> delta) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  if (times.empty()) throw std::invalid_argument("empty time grid");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < 0.0 || (k > 0 && times[k] <= times[k - 1]))
      throw std::invalid_argument("time grid must be increasing and nonnegative");
  }
  EntropyTrace tr;
  tr.delta = delta ? *delta : (times.size() > 1 ? times[1] - times[0] : 0.1);
  if (!(tr.delta > 0.0)) throw std::invalid_argument("delta must be positive");

  const GridOperator op = build(domain, budget);
  const GridFunction f0 = op.sample(f);
  if (f0.minCoeff() < floor)
    throw BelowFloor("min f = " + std::to_string(f0.minCoeff()) + " below floor " +
                     std::to_string(floor));
  const GridFunction phi = f0.array().square();
  // |grad phi|^2 / phi = 4 |grad f|^2.
  const GridFunction fisher =
      op.sample([&](const Eigen::VectorXd& x) { return 4.0 * f.gradient(x).squaredNorm(); });
  const double fisher0 = op.mean(fisher);
  const double m = op.mean(phi);
  tr.limit = m * std::log(m);

  // Evaluation times t_k and t_k + delta, stepped in order.
  std::vector<double> stops;
  for (double t : times) {
    stops.push_back(t);
    stops.push_back(t + tr.delta);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + b); }),
              stops.end());
  std::vector<double> s_at(stops.size());
  GridFunction u = phi;
  double now = 0.0;
  for (std::size_t j = 0; j < stops.size(); ++j) {
    if (stops[j] > now) u = grid_apply(op, u, stops[j] - now, budget.scheme);
    now = stops[j];
    s_at[j] = entropy_of(op, u);
  }
  auto lookup = [&](double t) {
    const auto it = std::lower_bound(stops.begin(), stops.end(), t - 1e-12 * (1.0 + t));
    return s_at[static_cast<std::size_t>(it - stops.begin())];
  };

  const double tol = budget.grid_constant * max_spacing_sq(op) * fisher0 + kGridOrder;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_k = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double s0 = lookup(t);
    const double s1 = lookup(t + tr.delta);
    tr.times.push_back(t);
    tr.entropy.push_back(s0);
    tr.production.push_back((s1 - s0) / tr.delta);
    tr.bound.push_back(-std::exp(-2.0 * t) * fisher0);
    if (tr.production.back() - tr.bound.back() < worst) {
      worst = tr.production.back() - tr.bound.back();
      worst_k = k;
    }
  }
  tr.terminal = s_at.back();

  tr.production_report = make_report("entropy_production", -tr.production[worst_k],
                                     -tr.bound[worst_k], tol);
  note_grid(tr.production_report, op, budget);
  tr.production_report.note("worst_t", tr.times[worst_k]);
  tr.production_report.note("delta", tr.delta);
  tr.production_report.note("steps", static_cast<double>(times.size()));
  tr.production_report.note("tolerance_rule", "grid_constant*dx^2*E[|grad phi|^2/phi]");

  // Distance to the limit after time T: by the spectral gap the variance of
  // T phi is at most e^{-2T} Var(phi), and x log x exceeds its tangent at m by
  // at most (x - m)^2 / (2 min phi).
  const double t_end = stops.back();
  const GridFunction centred = phi.array() - m;
  const double var = op.inner(centred, centred) / op.mass();
  const double remainder = std::exp(-2.0 * t_end) * var / (2.0 * phi.minCoeff());
  const double defect = tr.terminal - tr.limit;
  tr.limit_report = make_report("entropy_limit", std::abs(defect), 0.0,
                                remainder + budget.grid_constant * max_spacing_sq(op) * std::abs(tr.limit) +
                                    kGridOrder);
  note_grid(tr.limit_report, op, budget);
  tr.limit_report.note("terminal_time", t_end);
  tr.limit_report.note("terminal_entropy", tr.terminal);
  tr.limit_report.note("limit", tr.limit);
  tr.limit_report.note("decay_remainder", remainder);
  return tr;
}

}  // namespace oulab
