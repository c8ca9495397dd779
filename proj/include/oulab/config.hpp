#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oulab/domain.hpp"
#include "oulab/inequalities.hpp"
#include "oulab/testfn.hpp"

namespace oulab::cli {

using Json = nlohmann::ordered_json;

// Invalid configuration. line/column are 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Engine settings; resolution applies to 1D meshes and resolution_2d to 2D.
struct EngineSettings {
  Budget budget;
  std::vector<int> resolution_2d{64};

  Budget for_dim(int dim) const;
};

struct NamedDomain {
  std::string name;
  ConvexDomain domain;
};

struct FunctionSpec {
  std::string name;
  int dim = 1;
  Eigen::MatrixXd directions;
  std::string profile;
  bool bounded = false;

  CylFunction build() const;
};

struct CheckSpec {
  std::string kind;  // poincare, log_sobolev, gradient_bound, ...
  std::string label;
  std::string domain;
  std::string function;
  std::string g;  // second function of submultiplicative
  std::vector<double> times;
  std::string engine = "monte_carlo";  // invariance: monte_carlo | grid
  int free_dims = 1;                   // factorization
  double floor = 0.0;                  // entropy
  double rhs_scale = 1.0;
  std::optional<std::uint64_t> seed;
  Json engine_overrides = Json::object();
  std::optional<Eigen::MatrixXd> panel;  // dim x points
};

struct SpectrumSpec {
  std::string domain;
  int k = 4;
  Json engine_overrides = Json::object();
};

struct EvolveSpec {
  std::string domain;
  std::string function;
  std::vector<double> times;
  Json engine_overrides = Json::object();
};

struct ConvergeSpec {
  double radius = 1.0;
  std::string function;
  double t = 0.5;
  std::vector<int> n{4, 8, 16, 32, 64};
  std::size_t points = 200;
  std::size_t paths = 500;
  double step = 1e-3;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::string output_dir = "oulab-out";
  EngineSettings engine;
  std::vector<NamedDomain> domains;
  std::vector<FunctionSpec> functions;
  std::vector<CheckSpec> checks;
  std::vector<SpectrumSpec> spectrum;
  std::vector<EvolveSpec> evolve;
  std::optional<ConvergeSpec> converge;

  const ConvexDomain& domain(const std::string& name) const;
  const FunctionSpec& function(const std::string& name) const;
  // Engine settings with an override object applied on top.
  EngineSettings engine_with(const Json& overrides) const;
};

// Parses a configuration; errors carry line and column of the offending text
// when they can be located.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
Json to_json(const RunConfig& config);

Json domain_to_json(const ConvexDomain& domain);
// Product bases may name an entry of `known`.
ConvexDomain domain_from_json(const Json& j, const std::vector<NamedDomain>& known = {});
Json function_to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const std::string& name, const Json& j);
Json engine_to_json(const EngineSettings& e);
void apply_engine_json(EngineSettings& e, const Json& j);

}  // namespace oulab::cli
