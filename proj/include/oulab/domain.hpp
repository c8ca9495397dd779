#pragma once

#include <Eigen/Dense>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace oulab {

// Closed-set membership slack: a point counts as inside if every defining
// constraint holds up to this amount.
inline constexpr double kMembershipTol = 1e-9;
// Distance to the boundary under which a point is treated as a boundary point.
inline constexpr double kBoundaryTol = 1e-6;

struct ProjectOptions {
  int max_iterations = 10'000;
  double tolerance = 1e-10;
};

// {x : normal . x <= offset} with a unit normal.
struct Halfspace {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

class ConvexDomain;

struct WholeSpace {};
struct HalfspaceIntersection {
  std::vector<Halfspace> faces;
};
struct Ball {
  Eigen::VectorXd center;
  double radius = 1.0;
};
// {x : lower <= direction . x <= upper} with a unit direction.
struct Slab {
  Eigen::VectorXd direction;
  double lower = -1.0;
  double upper = 1.0;
};
// base x R^free_dims; the base acts on the leading coordinates.
struct Product {
  std::shared_ptr<const ConvexDomain> base;
  int free_dims = 0;
};

struct BoundaryQuery {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
};

// Axis-aligned box [lower, upper]. radius is the symmetric truncation radius
// applied to unbounded coordinates (infinite when nothing was truncated).
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double radius = std::numeric_limits<double>::infinity();
};

// An open convex set in R^dim, handled through its closure. Immutable value type.
class ConvexDomain {
 public:
  using Shape = std::variant<WholeSpace, HalfspaceIntersection, Ball, Slab, Product>;

  static ConvexDomain whole_space(int dim);
  // Normals must be unit vectors within 1e-12.
  static ConvexDomain halfspaces(int dim, std::vector<Halfspace> faces);
  static ConvexDomain ball(Eigen::VectorXd center, double radius);
  static ConvexDomain slab(Eigen::VectorXd direction, double lower, double upper);
  static ConvexDomain product(const ConvexDomain& base, int free_dims);

  // 1D conveniences.
  static ConvexDomain interval(double lower, double upper);
  static ConvexDomain half_line_above(double lower);

  int dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  bool is_whole_space() const;
  std::string describe() const;

  bool contains(const Eigen::VectorXd& x, double tol = kMembershipTol) const;
  // Euclidean projection onto the closure. Throws NoConvergence when the
  // polytope fallback (Dykstra) misses options.tolerance within the cap.
  Eigen::VectorXd project(const Eigen::VectorXd& x, const ProjectOptions& options = {}) const;
  // Unit outward normal at a smooth boundary point (within kBoundaryTol).
  // Throws CornerPoint when several constraints are active.
  BoundaryQuery outward_normal(const Eigen::VectorXd& x) const;

 private:
  ConvexDomain(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}
  void check_dim(const Eigen::VectorXd& x) const;

  int dim_;
  Shape shape_;
};

// Circumscribed regular n-gon around a 2D ball, faces at angles 2 pi k / n.
// Doubling n refines the face set, so the 2n-gon sits inside the n-gon.
ConvexDomain polygon_approximation(const ConvexDomain& ball, int n);

// Box whose complement has standard Gaussian mass at most tail_mass, clipped
// to the domain's own finite axis-aligned bounds.
Box truncation_box(const ConvexDomain& domain, double tail_mass);

}  // namespace oulab
