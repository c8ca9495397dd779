#include "oulab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "oulab/error.hpp"
#include "oulab/expr.hpp"

namespace oulab::cli {

namespace {

// Error anchored at a piece of text in the file: the first occurrence of
// `needle`, shifted by `offset` characters.
struct Anchored {
  std::string message;
  std::string needle;
  std::size_t offset = 0;
};

[[noreturn]] void fail(const std::string& message, const std::string& needle = {},
                       std::size_t offset = 0) {
  throw Anchored{message, needle, offset};
}

std::pair<int, int> line_column(const std::string& text, std::size_t pos) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string json_quote(const std::string& s) { return Json(s).dump(); }

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number", j.dump());
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer", j.dump());
  return j.get<int>();
}

std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where + ": expected a nonnegative integer", j.dump());
  return j.get<std::size_t>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string", j.dump());
  return j.get<std::string>();
}

Eigen::VectorXd vector(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  const Eigen::VectorXd v = vector(j, where);
  return {v.data(), v.data() + v.size()};
}

std::vector<int> integers(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) fail(where + ": expected an integer or array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::MatrixXd matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + ": expected a nonempty array of rows");
  const Eigen::VectorXd first = vector(j[0], where + "[0]");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Eigen::VectorXd row = vector(j[r], where + "[" + std::to_string(r) + "]");
    if (row.size() != first.size()) fail(where + ": rows differ in length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r).transpose()));
  return a;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(where + ": unknown key \"" + k + "\"", json_quote(k));
}

Scheme scheme_from(const std::string& s) {
  if (s == "expm") return Scheme::Expm;
  if (s == "crank_nicolson") return Scheme::CrankNicolson;
  fail("engine.scheme: expected \"expm\" or \"crank_nicolson\"", json_quote(s));
}

Json check_to_json(const CheckSpec& c) {
  Json j;
  j["kind"] = c.kind;
  if (!c.label.empty()) j["label"] = c.label;
  j["domain"] = c.domain;
  if (!c.function.empty()) j["function"] = c.function;
  if (!c.g.empty()) j["g"] = c.g;
  if (!c.times.empty()) j["times"] = c.times;
  if (c.kind == "invariance") j["engine"] = c.engine;
  if (c.kind == "factorization") j["free_dims"] = c.free_dims;
  if (c.kind == "entropy") j["floor"] = c.floor;
  if (c.rhs_scale != 1.0) j["rhs_scale"] = c.rhs_scale;
  if (c.seed) j["seed"] = *c.seed;
  if (!c.engine_overrides.empty()) j["overrides"] = c.engine_overrides;
  if (c.panel) j["panel"] = matrix_json(c.panel->transpose());
  return j;
}

const std::set<std::string> kKinds{"poincare",     "log_sobolev",  "gradient_bound",
                                   "submultiplicative", "invariance", "decay",
                                   "positivity_contraction", "entropy", "factorization",
                                   "oracle"};

}  // namespace

Budget EngineSettings::for_dim(int dim) const {
  Budget b = budget;
  if (dim == 2) b.resolution = resolution_2d;
  return b;
}

CylFunction FunctionSpec::build() const {
  return CylFunction::parse(dim, directions, profile, bounded);
}

const ConvexDomain& RunConfig::domain(const std::string& name) const {
  for (const auto& d : domains)
    if (d.name == name) return d.domain;
  throw ConfigError("unknown domain \"" + name + "\"");
}

const FunctionSpec& RunConfig::function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return f;
  throw ConfigError("unknown function \"" + name + "\"");
}

EngineSettings RunConfig::engine_with(const Json& overrides) const {
  EngineSettings e = engine;
  apply_engine_json(e, overrides);
  return e;
}

Json engine_to_json(const EngineSettings& e) {
  const Budget& b = e.budget;
  Json j;
  j["resolution"] = b.resolution;
  j["resolution_2d"] = e.resolution_2d;
  j["tail_mass"] = b.tail_mass;
  j["samples"] = b.samples;
  j["paths"] = b.paths;
  j["step"] = b.step;
  j["quad_order"] = b.quad_order;
  j["scheme"] = to_string(b.scheme);
  j["panel_size"] = b.panel_size;
  j["bias_constant"] = b.bias_constant;
  j["grid_constant"] = b.grid_constant;
  return j;
}

void apply_engine_json(EngineSettings& e, const Json& j) {
  check_keys(j,
             {"resolution", "resolution_2d", "tail_mass", "samples", "paths", "step",
              "quad_order", "scheme", "panel_size", "bias_constant", "grid_constant"},
             "engine");
  Budget& b = e.budget;
  for (const auto& [k, v] : j.items()) {
    const std::string where = "engine." + k;
    if (k == "resolution") b.resolution = integers(v, where);
    else if (k == "resolution_2d") e.resolution_2d = integers(v, where);
    else if (k == "tail_mass") b.tail_mass = number(v, where);
    else if (k == "samples") b.samples = count(v, where);
    else if (k == "paths") b.paths = count(v, where);
    else if (k == "step") b.step = number(v, where);
    else if (k == "quad_order") b.quad_order = integer(v, where);
    else if (k == "scheme") b.scheme = scheme_from(text(v, where));
    else if (k == "panel_size") b.panel_size = count(v, where);
    else if (k == "bias_constant") b.bias_constant = number(v, where);
    else if (k == "grid_constant") b.grid_constant = number(v, where);
  }
  if (!(b.step > 0.0)) fail("engine.step must be positive");
  if (!(b.tail_mass > 0.0 && b.tail_mass < 1.0)) fail("engine.tail_mass must lie in (0, 1)");
  if (b.samples < 2 || b.paths < 2) fail("engine.samples and engine.paths must be at least 2");
}

Json domain_to_json(const ConvexDomain& domain) {
  Json j;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, WholeSpace>) {
          j["shape"] = "whole_space";
          j["dim"] = domain.dim();
        } else if constexpr (std::is_same_v<S, HalfspaceIntersection>) {
          j["shape"] = "halfspaces";
          j["dim"] = domain.dim();
          Json faces = Json::array();
          for (const auto& f : s.faces) {
            Json fj;
            fj["normal"] = vector_json(f.normal);
            fj["offset"] = f.offset;
            faces.push_back(fj);
          }
          j["faces"] = faces;
        } else if constexpr (std::is_same_v<S, Ball>) {
          j["shape"] = "ball";
          j["center"] = vector_json(s.center);
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, Slab>) {
          j["shape"] = "slab";
          j["direction"] = vector_json(s.direction);
          j["lower"] = s.lower;
          j["upper"] = s.upper;
        } else {
          j["shape"] = "product";
          j["base"] = domain_to_json(*s.base);
          j["free_dims"] = s.free_dims;
        }
      },
      domain.shape());
  return j;
}

ConvexDomain domain_from_json(const Json& j, const std::vector<NamedDomain>& known) {
  const std::string shape = text(require(j, "shape", "domain"), "domain.shape");
  const std::string where = "domain(" + shape + ")";
  auto nested = [&](const Json& ref) -> ConvexDomain {
    if (ref.is_string()) {
      for (const auto& d : known)
        if (d.name == ref.get<std::string>()) return d.domain;
      fail(where + ": unknown domain " + ref.dump(), ref.dump());
    }
    return domain_from_json(ref, known);
  };
  try {
    if (shape == "whole_space") {
      check_keys(j, {"shape", "dim"}, where);
      return ConvexDomain::whole_space(integer(require(j, "dim", where), where + ".dim"));
    }
    if (shape == "interval") {
      check_keys(j, {"shape", "lower", "upper"}, where);
      return ConvexDomain::interval(number(require(j, "lower", where), where + ".lower"),
                                    number(require(j, "upper", where), where + ".upper"));
    }
    if (shape == "half_line") {
      check_keys(j, {"shape", "lower"}, where);
      return ConvexDomain::half_line_above(number(require(j, "lower", where), where + ".lower"));
    }
    if (shape == "halfspaces") {
      check_keys(j, {"shape", "dim", "faces"}, where);
      const int dim = integer(require(j, "dim", where), where + ".dim");
      const Json& fj = require(j, "faces", where);
      if (!fj.is_array()) fail(where + ".faces: expected an array");
      std::vector<Halfspace> faces;
      for (std::size_t i = 0; i < fj.size(); ++i) {
        const std::string w = where + ".faces[" + std::to_string(i) + "]";
        check_keys(fj[i], {"normal", "offset"}, w);
        faces.push_back({vector(require(fj[i], "normal", w), w + ".normal"),
                         number(require(fj[i], "offset", w), w + ".offset")});
      }
      return ConvexDomain::halfspaces(dim, std::move(faces));
    }
    if (shape == "ball") {
      check_keys(j, {"shape", "center", "radius"}, where);
      return ConvexDomain::ball(vector(require(j, "center", where), where + ".center"),
                                number(require(j, "radius", where), where + ".radius"));
    }
    if (shape == "slab") {
      check_keys(j, {"shape", "direction", "lower", "upper"}, where);
      return ConvexDomain::slab(vector(require(j, "direction", where), where + ".direction"),
                                number(require(j, "lower", where), where + ".lower"),
                                number(require(j, "upper", where), where + ".upper"));
    }
    if (shape == "product") {
      check_keys(j, {"shape", "base", "free_dims"}, where);
      return ConvexDomain::product(nested(require(j, "base", where)),
                                   integer(require(j, "free_dims", where), where + ".free_dims"));
    }
    if (shape == "polygon") {
      check_keys(j, {"shape", "ball", "sides"}, where);
      return polygon_approximation(nested(require(j, "ball", where)),
                                   integer(require(j, "sides", where), where + ".sides"));
    }
  } catch (const Error& e) {
    fail(where + ": " + e.what(), json_quote(shape));
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what(), json_quote(shape));
  }
  fail("unknown domain shape " + json_quote(shape), json_quote(shape));
}

Json function_to_json(const FunctionSpec& f) {
  Json j;
  j["dim"] = f.dim;
  j["directions"] = matrix_json(f.directions);
  j["profile"] = f.profile;
  j["bounded"] = f.bounded;
  return j;
}

FunctionSpec function_from_json(const std::string& name, const Json& j) {
  const std::string where = "functions." + name;
  check_keys(j, {"dim", "directions", "profile", "bounded"}, where);
  FunctionSpec f;
  f.name = name;
  f.dim = integer(require(j, "dim", where), where + ".dim");
  if (f.dim < 1) fail(where + ".dim must be positive");
  f.directions = j.contains("directions") ? matrix(j["directions"], where + ".directions")
                                          : Eigen::MatrixXd::Identity(f.dim, f.dim);
  if (f.directions.cols() != f.dim)
    fail(where + ".directions: rows must have length " + std::to_string(f.dim));
  f.profile = text(require(j, "profile", where), where + ".profile");
  if (j.contains("bounded")) {
    if (!j["bounded"].is_boolean()) fail(where + ".bounded: expected true or false");
    f.bounded = j["bounded"].get<bool>();
  }
  try {
    f.build();
  } catch (const ParseError& e) {
    // Column inside the JSON string literal (after the opening quote).
    const std::size_t col = e.column() > 0 ? e.column() : 1;
    fail(where + ".profile: " + e.what(), json_quote(f.profile), col);
  } catch (const std::exception& e) {
    fail(where + ": " + e.what(), json_quote(f.profile), 1);
  }
  return f;
}

namespace {

CheckSpec check_from_json(const Json& j, std::size_t index, const RunConfig& cfg) {
  const std::string where = "checks[" + std::to_string(index) + "]";
  check_keys(j,
             {"kind", "label", "domain", "function", "g", "times", "t", "engine", "free_dims",
              "floor", "rhs_scale", "seed", "overrides", "panel"},
             where);
  CheckSpec c;
  c.kind = text(require(j, "kind", where), where + ".kind");
  if (!kKinds.count(c.kind)) fail(where + ": unknown check kind " + json_quote(c.kind), json_quote(c.kind));
  c.label = j.contains("label") ? text(j["label"], where + ".label") : c.kind;
  c.domain = text(require(j, "domain", where), where + ".domain");
  bool found = false;
  for (const auto& d : cfg.domains) found = found || d.name == c.domain;
  if (!found) fail(where + ": unknown domain " + json_quote(c.domain), json_quote(c.domain));
  const int dim = cfg.domain(c.domain).dim();

  auto need_function = [&](const char* key) {
    const std::string name = text(require(j, key, where), where + "." + key);
    bool ok = false;
    for (const auto& f : cfg.functions) {
      if (f.name != name) continue;
      ok = true;
      if (f.dim != dim)
        fail(where + ": function " + json_quote(name) + " has dim " + std::to_string(f.dim) +
                 ", domain has dim " + std::to_string(dim),
             json_quote(name));
    }
    if (!ok) fail(where + ": unknown function " + json_quote(name), json_quote(name));
    return name;
  };
  if (c.kind != "oracle" || j.contains("function")) c.function = need_function("function");
  if (c.kind == "submultiplicative") c.g = need_function("g");

  if (j.contains("times")) c.times = numbers(j["times"], where + ".times");
  if (j.contains("t")) c.times.push_back(number(j["t"], where + ".t"));
  for (double t : c.times)
    if (!(t >= 0.0)) fail(where + ": times must be nonnegative");
  const bool timed = c.kind == "gradient_bound" || c.kind == "submultiplicative" ||
                     c.kind == "invariance" || c.kind == "decay" ||
                     c.kind == "positivity_contraction" || c.kind == "factorization" ||
                     c.kind == "oracle";
  if (timed && c.times.empty()) fail(where + ": needs \"t\" or \"times\"");

  if (j.contains("engine")) {
    c.engine = text(j["engine"], where + ".engine");
    if (c.engine != "monte_carlo" && c.engine != "grid")
      fail(where + ".engine: expected \"monte_carlo\" or \"grid\"", json_quote(c.engine));
  }
  if (j.contains("free_dims")) c.free_dims = integer(j["free_dims"], where + ".free_dims");
  if (j.contains("floor")) c.floor = number(j["floor"], where + ".floor");
  if (j.contains("rhs_scale")) c.rhs_scale = number(j["rhs_scale"], where + ".rhs_scale");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(where + ".seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("overrides")) {
    c.engine_overrides = j["overrides"];
    EngineSettings probe = cfg.engine;
    apply_engine_json(probe, c.engine_overrides);
  }
  if (j.contains("panel")) {
    const Eigen::MatrixXd rows = matrix(j["panel"], where + ".panel");
    const int want = c.kind == "factorization" ? dim + c.free_dims : dim;
    if (rows.cols() != want)
      fail(where + ".panel: points must have " + std::to_string(want) + " coordinates");
    c.panel = rows.transpose();
  }
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& source) {
  Json root;
  try {
    root = Json::parse(source);
  } catch (const Json::parse_error& e) {
    const std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(source, pos);
    throw ConfigError(std::string("invalid JSON: ") + e.what(), line, column);
  }

  RunConfig cfg;
  try {
    check_keys(root,
               {"seed", "output_dir", "engine", "domains", "functions", "checks", "spectrum",
                "evolve", "converge"},
               "config");
    if (root.contains("seed")) {
      if (!root["seed"].is_number_unsigned()) fail("seed: expected a nonnegative integer");
      cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("output_dir")) cfg.output_dir = text(root["output_dir"], "output_dir");
    if (root.contains("engine")) apply_engine_json(cfg.engine, root["engine"]);

    if (root.contains("domains")) {
      const Json& ds = root["domains"];
      if (!ds.is_object()) fail("domains: expected an object of named domains");
      for (const auto& [name, spec] : ds.items())
        cfg.domains.push_back({name, domain_from_json(spec, cfg.domains)});
    }
    if (root.contains("functions")) {
      const Json& fs = root["functions"];
      if (!fs.is_object()) fail("functions: expected an object of named functions");
      for (const auto& [name, spec] : fs.items()) cfg.functions.push_back(function_from_json(name, spec));
    }
    if (root.contains("checks")) {
      const Json& cs = root["checks"];
      if (!cs.is_array()) fail("checks: expected an array");
      for (std::size_t i = 0; i < cs.size(); ++i) cfg.checks.push_back(check_from_json(cs[i], i, cfg));
    }
    if (root.contains("spectrum")) {
      const Json& ss = root["spectrum"];
      if (!ss.is_array()) fail("spectrum: expected an array");
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string where = "spectrum[" + std::to_string(i) + "]";
        check_keys(ss[i], {"domain", "k", "overrides"}, where);
        SpectrumSpec s;
        s.domain = text(require(ss[i], "domain", where), where + ".domain");
        try {
          cfg.domain(s.domain);
        } catch (const ConfigError&) {
          fail(where + ": unknown domain " + json_quote(s.domain), json_quote(s.domain));
        }
        if (ss[i].contains("k")) s.k = integer(ss[i]["k"], where + ".k");
        if (s.k < 1) fail(where + ".k must be positive");
        if (ss[i].contains("overrides")) {
          s.engine_overrides = ss[i]["overrides"];
          EngineSettings probe = cfg.engine;
          apply_engine_json(probe, s.engine_overrides);
        }
        cfg.spectrum.push_back(s);
      }
    }
    if (root.contains("evolve")) {
      const Json& es = root["evolve"];
      if (!es.is_array()) fail("evolve: expected an array");
      for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string where = "evolve[" + std::to_string(i) + "]";
        check_keys(es[i], {"domain", "function", "times", "overrides"}, where);
        EvolveSpec e;
        e.domain = text(require(es[i], "domain", where), where + ".domain");
        e.function = text(require(es[i], "function", where), where + ".function");
        try {
          if (cfg.domain(e.domain).dim() != cfg.function(e.function).dim)
            fail(where + ": function and domain dimensions differ", json_quote(e.function));
        } catch (const ConfigError& err) {
          fail(where + ": " + err.what(), json_quote(e.domain));
        }
        e.times = numbers(require(es[i], "times", where), where + ".times");
        for (double t : e.times)
          if (!(t >= 0.0)) fail(where + ": times must be nonnegative");
        if (es[i].contains("overrides")) {
          e.engine_overrides = es[i]["overrides"];
          EngineSettings probe = cfg.engine;
          apply_engine_json(probe, e.engine_overrides);
        }
        cfg.evolve.push_back(e);
      }
    }
    if (root.contains("converge")) {
      const Json& c = root["converge"];
      const std::string where = "converge";
      check_keys(c, {"radius", "function", "t", "n", "points", "paths", "step"}, where);
      ConvergeSpec s;
      if (c.contains("radius")) s.radius = number(c["radius"], where + ".radius");
      s.function = text(require(c, "function", where), where + ".function");
      try {
        if (cfg.function(s.function).dim != 2)
          fail(where + ": function must be two-dimensional", json_quote(s.function));
      } catch (const ConfigError& err) {
        fail(where + ": " + err.what(), json_quote(s.function));
      }
      if (c.contains("t")) s.t = number(c["t"], where + ".t");
      if (c.contains("n")) s.n = integers(c["n"], where + ".n");
      if (c.contains("points")) s.points = count(c["points"], where + ".points");
      if (c.contains("paths")) s.paths = count(c["paths"], where + ".paths");
      if (c.contains("step")) s.step = number(c["step"], where + ".step");
      cfg.converge = s;
    }
  } catch (const Anchored& a) {
    int line = 0, column = 0;
    if (!a.needle.empty()) {
      const std::size_t pos = source.find(a.needle);
      if (pos != std::string::npos) std::tie(line, column) = line_column(source, pos + a.offset);
    }
    throw ConfigError(a.message, line, column);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["engine"] = engine_to_json(cfg.engine);
  Json ds = Json::object();
  for (const auto& d : cfg.domains) ds[d.name] = domain_to_json(d.domain);
  j["domains"] = ds;
  Json fs = Json::object();
  for (const auto& f : cfg.functions) fs[f.name] = function_to_json(f);
  j["functions"] = fs;
  Json cs = Json::array();
  for (const auto& c : cfg.checks) cs.push_back(check_to_json(c));
  j["checks"] = cs;
  Json ss = Json::array();
  for (const auto& s : cfg.spectrum) {
    Json e;
    e["domain"] = s.domain;
    e["k"] = s.k;
    if (!s.engine_overrides.empty()) e["overrides"] = s.engine_overrides;
    ss.push_back(e);
  }
  j["spectrum"] = ss;
  Json es = Json::array();
  for (const auto& s : cfg.evolve) {
    Json e;
    e["domain"] = s.domain;
    e["function"] = s.function;
    e["times"] = s.times;
    if (!s.engine_overrides.empty()) e["overrides"] = s.engine_overrides;
    es.push_back(e);
  }
  j["evolve"] = es;
  if (cfg.converge) {
    const ConvergeSpec& c = *cfg.converge;
    Json e;
    e["radius"] = c.radius;
    e["function"] = c.function;
    e["t"] = c.t;
    e["n"] = c.n;
    e["points"] = c.points;
    e["paths"] = c.paths;
    e["step"] = c.step;
    j["converge"] = e;
  }
  return j;
}

}  // namespace oulab::cli
