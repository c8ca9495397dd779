#include "oulab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oulab/error.hpp"
#include "oulab/gauss.hpp"

namespace oulab {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_unit(const Eigen::VectorXd& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kUnitTol) {
    throw std::invalid_argument(std::string(what) + " must have unit Euclidean norm");
  }
}

Eigen::VectorXd project_halfspace(const Eigen::VectorXd& x, const Halfspace& h) {
  const double r = h.normal.dot(x) - h.offset;
  if (r <= 0.0) return x;
  return x - r * h.normal;
}

double max_violation(const std::vector<Halfspace>& faces, const Eigen::VectorXd& x) {
  double v = -kInf;
  for (const auto& f : faces) v = std::max(v, f.normal.dot(x) - f.offset);
  return v;
}

bool feasible(const std::vector<Halfspace>& faces, const Eigen::VectorXd& x) {
  return max_violation(faces, x) <= 1e-12;
}

// Exact projection when at most two constraints are active at the optimum
// (KKT with nonnegative multipliers); Dykstra otherwise.
Eigen::VectorXd project_polytope(const std::vector<Halfspace>& faces, const Eigen::VectorXd& x,
                                 const ProjectOptions& options) {
  if (max_violation(faces, x) <= 0.0) return x;
  for (const auto& f : faces) {
    const double r = f.normal.dot(x) - f.offset;
    if (r <= 0.0) continue;
    Eigen::VectorXd p = x - r * f.normal;
    if (feasible(faces, p)) return p;
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      const double c = faces[i].normal.dot(faces[j].normal);
      const double det = 1.0 - c * c;
      if (det < 1e-12) continue;
      const double ri = faces[i].normal.dot(x) - faces[i].offset;
      const double rj = faces[j].normal.dot(x) - faces[j].offset;
      const double li = (ri - c * rj) / det;
      const double lj = (rj - c * ri) / det;
      if (li < 0.0 || lj < 0.0) continue;
      Eigen::VectorXd p = x - li * faces[i].normal - lj * faces[j].normal;
      if (feasible(faces, p)) return p;
    }
  }
  // Cyclic Dykstra.
  Eigen::VectorXd cur = x;
  std::vector<Eigen::VectorXd> increments(faces.size(), Eigen::VectorXd::Zero(x.size()));
  for (int it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd start = cur;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const Eigen::VectorXd y = cur + increments[i];
      cur = project_halfspace(y, faces[i]);
      increments[i] = y - cur;
    }
    if ((cur - start).norm() <= options.tolerance &&
        max_violation(faces, cur) <= options.tolerance) {
      return cur;
    }
  }
  throw NoConvergence("Dykstra projection did not reach tolerance within " +
                      std::to_string(options.max_iterations) + " cycles");
}

// Finite axis-aligned bounds implied by the domain's own constraints.
void axis_bounds(const ConvexDomain& domain, Eigen::VectorXd& lo, Eigen::VectorXd& hi,
                 int offset) {
  std::visit(
      Overloaded{
          [](const WholeSpace&) {},
          [&](const HalfspaceIntersection& h) {
            for (const auto& f : h.faces) {
              for (int i = 0; i < f.normal.size(); ++i) {
                if (std::abs(std::abs(f.normal[i]) - 1.0) > kUnitTol) continue;
                if (f.normal[i] > 0) {
                  hi[offset + i] = std::min(hi[offset + i], f.offset);
                } else {
                  lo[offset + i] = std::max(lo[offset + i], -f.offset);
                }
              }
            }
          },
          [&](const Ball& b) {
            for (int i = 0; i < b.center.size(); ++i) {
              lo[offset + i] = std::max(lo[offset + i], b.center[i] - b.radius);
              hi[offset + i] = std::min(hi[offset + i], b.center[i] + b.radius);
            }
          },
          [&](const Slab& s) {
            for (int i = 0; i < s.direction.size(); ++i) {
              if (std::abs(std::abs(s.direction[i]) - 1.0) > kUnitTol) continue;
              const double a = s.direction[i] > 0 ? s.lower : -s.upper;
              const double b = s.direction[i] > 0 ? s.upper : -s.lower;
              lo[offset + i] = std::max(lo[offset + i], a);
              hi[offset + i] = std::min(hi[offset + i], b);
            }
          },
          [&](const Product& p) { axis_bounds(*p.base, lo, hi, offset); },
      },
      domain.shape());
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

ConvexDomain ConvexDomain::whole_space(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  return ConvexDomain(dim, WholeSpace{});
}

ConvexDomain ConvexDomain::halfspaces(int dim, std::vector<Halfspace> faces) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  for (const auto& f : faces) {
    if (f.normal.size() != dim) throw DimensionMismatch(dim, static_cast<int>(f.normal.size()));
    require_unit(f.normal, "half-space normal");
  }
  return ConvexDomain(dim, HalfspaceIntersection{std::move(faces)});
}

ConvexDomain ConvexDomain::ball(Eigen::VectorXd center, double radius) {
  if (center.size() < 1) throw std::invalid_argument("dimension must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const int dim = static_cast<int>(center.size());
  return ConvexDomain(dim, Ball{std::move(center), radius});
}

ConvexDomain ConvexDomain::slab(Eigen::VectorXd direction, double lower, double upper) {
  if (direction.size() < 1) throw std::invalid_argument("dimension must be positive");
  require_unit(direction, "slab direction");
  if (!(lower < upper)) throw std::invalid_argument("slab requires lower < upper");
  const int dim = static_cast<int>(direction.size());
  return ConvexDomain(dim, Slab{std::move(direction), lower, upper});
}

ConvexDomain ConvexDomain::product(const ConvexDomain& base, int free_dims) {
  if (free_dims < 0) throw std::invalid_argument("free dimensions must be nonnegative");
  return ConvexDomain(base.dim() + free_dims,
                      Product{std::make_shared<const ConvexDomain>(base), free_dims});
}

ConvexDomain ConvexDomain::interval(double lower, double upper) {
  return slab(Eigen::VectorXd::Ones(1), lower, upper);
}

ConvexDomain ConvexDomain::half_line_above(double lower) {
  return halfspaces(1, {Halfspace{Eigen::VectorXd::Constant(1, -1.0), -lower}});
}

bool ConvexDomain::is_whole_space() const {
  if (std::holds_alternative<WholeSpace>(shape_)) return true;
  if (const auto* p = std::get_if<Product>(&shape_)) return p->base->is_whole_space();
  if (const auto* h = std::get_if<HalfspaceIntersection>(&shape_)) return h->faces.empty();
  return false;
}

std::string ConvexDomain::describe() const {
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) { return "R^" + std::to_string(dim_); },
          [&](const HalfspaceIntersection& h) {
            std::ostringstream os;
            os << "polytope(" << h.faces.size() << " faces in R^" << dim_ << ")";
            return os.str();
          },
          [&](const Ball& b) {
            std::ostringstream os;
            os << "ball(" << format_vector(b.center) << ", r=" << b.radius << ")";
            return os.str();
          },
          [&](const Slab& s) {
            std::ostringstream os;
            os << "slab(" << format_vector(s.direction) << ", [" << s.lower << ", " << s.upper
               << "])";
            return os.str();
          },
          [&](const Product& p) {
            return p.base->describe() + " x R^" + std::to_string(p.free_dims);
          },
      },
      shape_);
}

void ConvexDomain::check_dim(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, static_cast<int>(x.size()));
}

bool ConvexDomain::contains(const Eigen::VectorXd& x, double tol) const {
  check_dim(x);
  return std::visit(
      Overloaded{
          [](const WholeSpace&) { return true; },
          [&](const HalfspaceIntersection& h) {
            for (const auto& f : h.faces)
              if (f.normal.dot(x) > f.offset + tol) return false;
            return true;
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
          [&](const Slab& s) {
            const double v = s.direction.dot(x);
            return v >= s.lower - tol && v <= s.upper + tol;
          },
          [&](const Product& p) {
            return p.base->contains(x.head(p.base->dim()), tol);
          },
      },
      shape_);
}

Eigen::VectorXd ConvexDomain::project(const Eigen::VectorXd& x,
                                      const ProjectOptions& options) const {
  check_dim(x);
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) -> Eigen::VectorXd { return x; },
          [&](const HalfspaceIntersection& h) -> Eigen::VectorXd {
            return project_polytope(h.faces, x, options);
          },
          [&](const Ball& b) -> Eigen::VectorXd {
            const Eigen::VectorXd d = x - b.center;
            const double r = d.norm();
            if (r <= b.radius) return x;
            return b.center + (b.radius / r) * d;
          },
          [&](const Slab& s) -> Eigen::VectorXd {
            const double v = s.direction.dot(x);
            if (v > s.upper) return x - (v - s.upper) * s.direction;
            if (v < s.lower) return x + (s.lower - v) * s.direction;
            return x;
          },
          [&](const Product& p) -> Eigen::VectorXd {
            Eigen::VectorXd out = x;
            const int k = p.base->dim();
            out.head(k) = p.base->project(x.head(k), options);
            return out;
          },
      },
      shape_);
}

BoundaryQuery ConvexDomain::outward_normal(const Eigen::VectorXd& x) const {
  check_dim(x);
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) -> BoundaryQuery {
            throw NotOnBoundary("the whole space has no boundary");
          },
          [&](const HalfspaceIntersection& h) -> BoundaryQuery {
            int active = -1;
            int count = 0;
            for (std::size_t i = 0; i < h.faces.size(); ++i) {
              const double r = h.faces[i].normal.dot(x) - h.faces[i].offset;
              if (r > kBoundaryTol) throw NotOnBoundary("point lies outside the domain");
              if (std::abs(r) <= kBoundaryTol) {
                active = static_cast<int>(i);
                ++count;
              }
            }
            if (count == 0) throw NotOnBoundary("point is not on the boundary");
            if (count > 1) throw CornerPoint("several constraints active; normal not unique");
            const auto& f = h.faces[static_cast<std::size_t>(active)];
            return {x - (f.normal.dot(x) - f.offset) * f.normal, f.normal};
          },
          [&](const Ball& b) -> BoundaryQuery {
            const Eigen::VectorXd d = x - b.center;
            const double r = d.norm();
            if (std::abs(r - b.radius) > kBoundaryTol)
              throw NotOnBoundary("point is not on the sphere");
            const Eigen::VectorXd n = d / r;
            return {b.center + b.radius * n, n};
          },
          [&](const Slab& s) -> BoundaryQuery {
            const double v = s.direction.dot(x);
            const bool at_lower = std::abs(v - s.lower) <= kBoundaryTol;
            const bool at_upper = std::abs(v - s.upper) <= kBoundaryTol;
            if (at_lower && at_upper) throw CornerPoint("slab faces coincide within tolerance");
            if (at_upper) return {x - (v - s.upper) * s.direction, s.direction};
            if (at_lower) return {x + (s.lower - v) * s.direction, -s.direction};
            throw NotOnBoundary("point is not on a slab face");
          },
          [&](const Product& p) -> BoundaryQuery {
            const int k = p.base->dim();
            BoundaryQuery q = p.base->outward_normal(x.head(k));
            BoundaryQuery out{x, Eigen::VectorXd::Zero(dim_)};
            out.point.head(k) = q.point;
            out.normal.head(k) = q.normal;
            return out;
          },
      },
      shape_);
}

ConvexDomain polygon_approximation(const ConvexDomain& ball, int n) {
  if (ball.dim() != 2) throw UnsupportedDimension(ball.dim());
  const auto* b = std::get_if<Ball>(&ball.shape());
  if (b == nullptr) throw std::invalid_argument("polygon approximation needs a ball");
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  std::vector<Halfspace> faces;
  faces.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(n));
    Eigen::VectorXd normal(2);
    normal << std::cos(theta), std::sin(theta);
    normal.normalize();
    faces.push_back({normal, normal.dot(b->center) + b->radius});
  }
  return ConvexDomain::halfspaces(2, std::move(faces));
}

Box truncation_box(const ConvexDomain& domain, double tail_mass) {
  if (!(tail_mass > 0.0 && tail_mass < 1.0))
    throw std::invalid_argument("tail mass must lie in (0, 1)");
  const int dim = domain.dim();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, -kInf);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, kInf);
  axis_bounds(domain, lo, hi, 0);

  // Coordinates already confined to [-R1, R1] never get clipped; the tail
  // budget is split evenly (union bound) over the remaining ones.
  const double r1 = gauss::normal_upper_quantile(0.5 * tail_mass);
  int open = 0;
  for (int i = 0; i < dim; ++i)
    if (lo[i] < -r1 || hi[i] > r1) ++open;
  const double radius = gauss::normal_upper_quantile(0.5 * tail_mass / std::max(open, 1));
  Box box{lo, hi, open > 0 ? radius : kInf};
  for (int i = 0; i < dim; ++i) {
    box.lower[i] = std::max(lo[i], -radius);
    box.upper[i] = std::min(hi[i], radius);
    if (!(box.lower[i] < box.upper[i]))
      throw MassTooSmall("domain lies beyond the truncation radius in coordinate " +
                         std::to_string(i));
  }
  return box;
}

}  // namespace oulab
