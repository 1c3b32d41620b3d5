#include "bmcheck/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/process/gaussian_law.hpp"
#include "bmcheck/process/time_grid.hpp"
#include "bmcheck/transforms/parse.hpp"

namespace bmcheck::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::vector<std::string> kTestTypes{
    "conformance", "marginal_two_sample", "gaussian_marginal", "stationarity",
    "independence", "qv", "conditional_mean", "laplacian", "eikonal",
    "gradient_constancy", "mean_value", "smoothing", "jensen", "ball_volume"};

std::vector<std::string> allowed_test_keys(const std::string& type) {
  std::vector<std::string> keys{"type", "expect_reject"};
  auto add = [&](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.emplace_back(k);
  };
  if (type == "conformance") add({"times", "delta", "t1", "t2", "windows", "s", "t"});
  if (type == "gaussian_marginal" || type == "marginal_two_sample") add({"times"});
  if (type == "stationarity") add({"delta", "t1", "t2"});
  if (type == "independence") add({"windows"});
  if (type == "conditional_mean") add({"s", "t"});
  if (type == "laplacian" || type == "gradient_constancy") add({"field", "domain", "tolerance"});
  if (type == "eikonal") add({"field", "domain", "target", "tolerance"});
  if (type == "mean_value") add({"field", "x", "r", "samples"});
  if (type == "smoothing") add({"field", "x", "tau", "mu", "samples"});
  if (type == "jensen") add({"field", "x", "tau", "samples"});
  if (type == "ball_volume") add({"n", "samples"});
  return keys;
}

// Typed access to one JSON object that records errors under a dotted path
// instead of throwing.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {}

  bool object_ok() const { return obj_.is_object(); }

  void only(const std::vector<std::string>& keys) {
    if (!obj_.is_object()) return;
    for (const auto& [k, v] : obj_.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        error(k, "unknown key");
  }

  bool has(const std::string& k) const { return obj_.is_object() && obj_.contains(k); }
  const json& raw(const std::string& k) const { return obj_.at(k); }
  std::string where(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  void error(const std::string& k, const std::string& msg) {
    errors_.push_back(where(k) + ": " + msg);
  }

  void number(const std::string& k, double& out) {
    if (!has(k)) return;
    const auto& v = obj_.at(k);
    if (!v.is_number() || !std::isfinite(v.get<double>()))
      error(k, "expected a finite number");
    else
      out = v.get<double>();
  }

  template <typename Int>
  void integer(const std::string& k, Int& out) {
    if (!has(k)) return;
    const auto& v = obj_.at(k);
    if (v.is_number_unsigned())
      out = static_cast<Int>(v.get<std::uint64_t>());
    else if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
      out = static_cast<Int>(v.get<std::int64_t>());
    else
      error(k, "expected a non-negative integer");
  }

  void boolean(const std::string& k, bool& out) {
    if (!has(k)) return;
    if (!obj_.at(k).is_boolean())
      error(k, "expected true or false");
    else
      out = obj_.at(k).get<bool>();
  }

  void string(const std::string& k, std::string& out) {
    if (!has(k)) return;
    if (!obj_.at(k).is_string())
      error(k, "expected a string");
    else
      out = obj_.at(k).get<std::string>();
  }

  void numbers(const std::string& k, std::vector<double>& out) {
    if (!has(k)) return;
    const auto& v = obj_.at(k);
    std::vector<double> tmp;
    bool ok = v.is_array();
    if (ok)
      for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) ok = false;
        else tmp.push_back(e.get<double>());
      }
    if (!ok)
      error(k, "expected an array of finite numbers");
    else
      out = std::move(tmp);
  }

  void vector(const std::string& k, Vector& out) {
    std::vector<double> v;
    const std::size_t before = errors_.size();
    numbers(k, v);
    if (has(k) && errors_.size() == before)
      out = Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  void matrix(const std::string& k, Matrix& out) {
    if (!has(k)) return;
    const auto& v = obj_.at(k);
    bool ok = v.is_array() && !v.empty();
    std::size_t cols = ok && v[0].is_array() ? v[0].size() : 0;
    ok = ok && cols > 0;
    if (ok)
      for (const auto& row : v)
        if (!row.is_array() || row.size() != cols) ok = false;
    Matrix m;
    if (ok) {
      m.resize(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
      for (std::size_t i = 0; i < v.size() && ok; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          const auto& e = v[i][j];
          if (!e.is_number() || !std::isfinite(e.get<double>())) {
            ok = false;
            break;
          }
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e.get<double>();
        }
    }
    if (!ok)
      error(k, "expected a rectangular array of arrays of finite numbers");
    else
      out = std::move(m);
  }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
};

DomainSpec parse_domain(const json& j, const std::string& path, std::vector<std::string>& errors) {
  DomainSpec d;
  Reader r(j, path, errors);
  if (!r.object_ok()) {
    errors.push_back(path + ": expected an object");
    return d;
  }
  r.string("mask", d.mask);
  if (d.mask == "box") {
    r.only({"mask", "spacing", "lo", "hi"});
    r.vector("lo", d.lo);
    r.vector("hi", d.hi);
    if (!r.has("lo") || !r.has("hi")) errors.push_back(path + ": box needs lo and hi");
  } else if (d.mask == "ball") {
    r.only({"mask", "spacing", "center", "radius"});
    r.vector("center", d.center);
    r.number("radius", d.radius);
    if (!r.has("center")) errors.push_back(path + ": ball needs center");
  } else if (d.mask == "annulus") {
    r.only({"mask", "spacing", "center", "inner", "outer"});
    r.vector("center", d.center);
    r.number("inner", d.inner);
    r.number("outer", d.outer);
    if (!r.has("center")) errors.push_back(path + ": annulus needs center");
  } else {
    r.error("mask", "expected box, ball or annulus");
  }
  r.number("spacing", d.spacing);
  return d;
}

std::size_t domain_dimension(const DomainSpec& d) {
  return static_cast<std::size_t>(d.mask == "box" ? d.lo.size() : d.center.size());
}

TestSpec parse_test(const json& j, const std::string& path, std::vector<std::string>& errors) {
  TestSpec t;
  Reader r(j, path, errors);
  if (!r.object_ok()) {
    errors.push_back(path + ": expected an object");
    return t;
  }
  if (!r.has("type")) {
    errors.push_back(path + ".type: missing");
    return t;
  }
  r.string("type", t.type);
  if (std::find(kTestTypes.begin(), kTestTypes.end(), t.type) == kTestTypes.end()) {
    r.error("type", "unknown test type '" + t.type + "'");
    return t;
  }
  r.only(allowed_test_keys(t.type));
  r.boolean("expect_reject", t.expect_reject);
  if (t.type == "conformance" || t.type == "gaussian_marginal" || t.type == "marginal_two_sample")
    t.times = {0.5, 1.0, 2.0};
  if (t.type == "conformance" || t.type == "independence") t.windows = {{{0, 1}, {1, 2}}};
  if (t.type == "laplacian" || t.type == "eikonal") t.tolerance = 1e-6;
  if (t.type == "gradient_constancy") t.tolerance = 1e-4;
  r.numbers("times", t.times);
  r.number("delta", t.delta);
  r.number("t1", t.t1);
  r.number("t2", t.t2);
  r.number("s", t.s);
  r.number("t", t.t);
  if (r.has("windows")) {
    const auto& w = r.raw("windows");
    bool ok = w.is_array();
    decltype(t.windows) parsed;
    if (ok)
      for (const auto& pair : w) {
        if (!pair.is_array() || pair.size() != 2) {
          ok = false;
          break;
        }
        std::array<std::pair<double, double>, 2> two;
        for (std::size_t i = 0; i < 2 && ok; ++i) {
          const auto& win = pair[i];
          if (!win.is_array() || win.size() != 2 || !win[0].is_number() || !win[1].is_number())
            ok = false;
          else
            two[i] = {win[0].get<double>(), win[1].get<double>()};
        }
        if (ok) parsed.push_back({two[0], two[1]});
      }
    if (!ok)
      r.error("windows", "expected [[[s,t],[u,v]], ...]");
    else
      t.windows = std::move(parsed);
  }
  r.string("field", t.field);
  if (r.has("domain")) t.domain = parse_domain(r.raw("domain"), r.where("domain"), errors);
  r.number("tolerance", t.tolerance);
  r.number("target", t.target);
  r.vector("x", t.x);
  r.number("r", t.r);
  r.number("tau", t.tau);
  r.number("mu", t.mu);
  r.integer("samples", t.samples);
  r.integer("n", t.n);
  return t;
}

ojson vector_json(const Vector& v) {
  auto j = ojson::array();
  for (double x : v) j.push_back(x);
  return j;
}

ojson matrix_json(const Matrix& m) {
  auto j = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(vector_json(m.row(i).transpose()));
  return j;
}

ojson domain_json(const DomainSpec& d) {
  ojson j;
  j["mask"] = d.mask;
  j["spacing"] = d.spacing;
  if (d.mask == "box") {
    j["lo"] = vector_json(d.lo);
    j["hi"] = vector_json(d.hi);
  } else {
    j["center"] = vector_json(d.center);
    if (d.mask == "ball") {
      j["radius"] = d.radius;
    } else {
      j["inner"] = d.inner;
      j["outer"] = d.outer;
    }
  }
  return j;
}

ojson test_json(const TestSpec& t) {
  ojson j;
  j["type"] = t.type;
  j["expect_reject"] = t.expect_reject;
  const auto keys = allowed_test_keys(t.type);
  auto allowed = [&](const char* k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
  if (allowed("times")) j["times"] = t.times;
  if (allowed("delta")) {
    j["delta"] = t.delta;
    j["t1"] = t.t1;
    j["t2"] = t.t2;
  }
  if (allowed("windows")) {
    auto w = ojson::array();
    for (const auto& [a, b] : t.windows)
      w.push_back(ojson::array({ojson::array({a.first, a.second}), ojson::array({b.first, b.second})}));
    j["windows"] = w;
  }
  if (allowed("s")) {
    j["s"] = t.s;
    j["t"] = t.t;
  }
  if (allowed("field")) j["field"] = t.field;
  if (allowed("domain") && t.domain) j["domain"] = domain_json(*t.domain);
  if (allowed("tolerance")) j["tolerance"] = t.tolerance;
  if (allowed("target")) j["target"] = t.target;
  if (allowed("x")) j["x"] = vector_json(t.x);
  if (allowed("r")) j["r"] = t.r;
  if (allowed("tau")) j["tau"] = t.tau;
  if (allowed("mu")) j["mu"] = t.mu;
  if (allowed("n")) j["n"] = t.n;
  if (allowed("samples")) j["samples"] = t.samples;
  return j;
}

bool on_grid(const process::TimeGrid& grid, double t) { return grid.index_of(t).has_value(); }

void check_pde_test(const TestSpec& t, const std::string& path, std::size_t law_dim,
                    std::vector<std::string>& errors) {
  const bool grid_check = t.type == "laplacian" || t.type == "eikonal" ||
                          t.type == "gradient_constancy";
  std::size_t dim = law_dim;
  if (grid_check) {
    if (!t.domain) {
      errors.push_back(path + ".domain: missing");
      return;
    }
    const auto& d = *t.domain;
    dim = domain_dimension(d);
    if (dim == 0) errors.push_back(path + ".domain: dimension must be >= 1");
    if (d.mask == "box" && d.lo.size() != d.hi.size())
      errors.push_back(path + ".domain: lo and hi differ in length");
    if (!(d.spacing > 0)) errors.push_back(path + ".domain.spacing: must be > 0");
    if (d.mask == "ball" && !(d.radius > 0)) errors.push_back(path + ".domain.radius: must be > 0");
    if (d.mask == "annulus" && !(d.inner >= 0 && d.outer > d.inner))
      errors.push_back(path + ".domain: need 0 <= inner < outer");
    if (!(t.tolerance >= 0)) errors.push_back(path + ".tolerance: must be >= 0");
    if (t.type == "eikonal" && !(t.target >= 0)) errors.push_back(path + ".target: must be >= 0");
  } else {
    if (t.type == "mean_value") dim = static_cast<std::size_t>(t.x.size());
    if (static_cast<std::size_t>(t.x.size()) != dim)
      errors.push_back(path + ".x: expected " + std::to_string(dim) + " coordinates");
    if (t.type == "mean_value" && !(t.r > 0)) errors.push_back(path + ".r: must be > 0");
    if ((t.type == "smoothing" || t.type == "jensen") && !(t.tau > 0))
      errors.push_back(path + ".tau: must be > 0");
    if (t.samples < 2) errors.push_back(path + ".samples: must be >= 2");
  }
  if (t.field.empty()) {
    errors.push_back(path + ".field: missing");
    return;
  }
  if (dim == 0) return;
  try {
    const auto f = transforms::parse_transform(t.field, dim);
    if (!f.is_scalar()) errors.push_back(path + ".field: must be a scalar field");
  } catch (const std::exception& e) {
    errors.push_back(path + ".field: " + e.what());
  }
}

void collect_errors(const ScenarioConfig& c, std::vector<std::string>& errors) {
  if (c.dimension < 1) errors.push_back("law.dimension: must be >= 1");
  if (static_cast<std::size_t>(c.drift.size()) != c.dimension)
    errors.push_back("law.drift: expected " + std::to_string(c.dimension) + " entries");
  if (static_cast<std::size_t>(c.covariance.rows()) != c.dimension ||
      static_cast<std::size_t>(c.covariance.cols()) != c.dimension) {
    errors.push_back("law.covariance: expected a " + std::to_string(c.dimension) + "x" +
                     std::to_string(c.dimension) + " matrix");
  } else if (static_cast<std::size_t>(c.drift.size()) == c.dimension) {
    try {
      process::GaussianLaw(c.drift, c.covariance);
    } catch (const std::exception& e) {
      errors.push_back(std::string("law.covariance: ") + e.what());
    }
  }
  if (static_cast<std::size_t>(c.origin.size()) != c.dimension)
    errors.push_back("origin: expected " + std::to_string(c.dimension) + " entries");
  if (!(c.alpha > 0.0 && c.alpha < 1.0))
    errors.push_back("alpha: must lie in (0, 1), got " + format_number(c.alpha));
  if (c.bootstrap < 1) errors.push_back("bootstrap: must be >= 1");
  if (c.permutations < 1) errors.push_back("permutations: must be >= 1");

  std::optional<process::TimeGrid> grid;
  try {
    grid = c.times.empty() ? process::TimeGrid::uniform(c.horizon, c.steps)
                           : process::TimeGrid(c.times);
  } catch (const std::exception& e) {
    errors.push_back(std::string("grid: ") + e.what());
  }

  const bool path_tests = std::any_of(c.tests.begin(), c.tests.end(), needs_paths);
  if (path_tests) {
    if (c.paths < 100) errors.push_back("paths: must be >= 100");
    if (c.dimension >= 1) {
      try {
        transforms::parse_transform(c.transform, c.dimension);
      } catch (const std::exception& e) {
        errors.push_back("transform: " + std::string(e.what()));
      }
    }
  }

  for (std::size_t i = 0; i < c.tests.size(); ++i) {
    const auto& t = c.tests[i];
    const std::string path = "tests[" + std::to_string(i) + "]";
    if (std::find(kTestTypes.begin(), kTestTypes.end(), t.type) == kTestTypes.end()) continue;
    if (!needs_paths(t)) {
      if (t.type == "ball_volume") {
        if (t.n < 1 || t.n > 30) errors.push_back(path + ".n: must lie in [1, 30]");
        if (t.samples < 2) errors.push_back(path + ".samples: must be >= 2");
      } else {
        check_pde_test(t, path, c.dimension, errors);
      }
      continue;
    }
    if (!grid) continue;
    auto need = [&](const std::string& key, double v) {
      if (!on_grid(*grid, v))
        errors.push_back(path + "." + key + ": time " + std::to_string(v) + " is not on the grid");
    };
    if (t.type == "conformance" || t.type == "gaussian_marginal" ||
        t.type == "marginal_two_sample")
      for (double v : t.times) {
        if (!(v > 0)) errors.push_back(path + ".times: times must be > 0");
        need("times", v);
      }
    if (t.type == "conformance" || t.type == "stationarity") {
      if (!(t.delta > 0)) errors.push_back(path + ".delta: must be > 0");
      need("t1", t.t1);
      need("t2", t.t2);
      need("delta", t.t1 + t.delta);
      need("delta", t.t2 + t.delta);
    }
    if (t.type == "conformance" || t.type == "independence")
      for (const auto& [a, b] : t.windows)
        for (const auto& w : {a, b}) {
          if (!(w.first < w.second)) errors.push_back(path + ".windows: need s < t in every window");
          need("windows", w.first);
          need("windows", w.second);
        }
    if (t.type == "conformance" || t.type == "conditional_mean") {
      if (!(t.s > 0 && t.s < t.t)) errors.push_back(path + ".s: need 0 < s < t");
      need("s", t.s);
      need("t", t.t);
    }
    if ((t.type == "conformance" || t.type == "qv") && grid->steps() < 100)
      errors.push_back(path + ": quadratic variation needs grid.steps >= 100");
  }
}

}  // namespace

bool needs_paths(const TestSpec& t) {
  return t.type == "conformance" || t.type == "marginal_two_sample" ||
         t.type == "gaussian_marginal" || t.type == "stationarity" ||
         t.type == "independence" || t.type == "qv" || t.type == "conditional_mean";
}

ScenarioConfig parse_config(const json& j) {
  std::vector<std::string> errors;
  ScenarioConfig c;
  if (!j.is_object()) throw ConfigInvalid({"config: expected a JSON object"});
  Reader top(j, "", errors);
  top.only({"schema_version", "name", "law", "grid", "origin", "paths", "transform", "seed",
            "alpha", "bootstrap", "permutations", "tests", "output"});
  int version = 0;
  if (!top.has("schema_version"))
    errors.push_back("schema_version: missing");
  else {
    top.integer("schema_version", version);
    if (version != kSchemaVersion && top.raw("schema_version").is_number_integer())
      errors.push_back("schema_version: unsupported version " + std::to_string(version));
  }
  top.string("name", c.name);

  bool law_given = false;
  if (top.has("law")) {
    Reader law(top.raw("law"), "law", errors);
    if (!law.object_ok()) {
      errors.push_back("law: expected an object");
    } else {
      law_given = true;
      law.only({"dimension", "drift", "covariance"});
      law.integer("dimension", c.dimension);
      law.vector("drift", c.drift);
      law.matrix("covariance", c.covariance);
      if (!law.has("drift")) c.drift = Vector::Zero(static_cast<Eigen::Index>(c.dimension));
      if (!law.has("covariance"))
        c.covariance = Matrix::Identity(static_cast<Eigen::Index>(c.dimension),
                                        static_cast<Eigen::Index>(c.dimension));
    }
  }
  if (!law_given) {
    c.drift = Vector::Zero(static_cast<Eigen::Index>(c.dimension));
    c.covariance = Matrix::Identity(static_cast<Eigen::Index>(c.dimension),
                                    static_cast<Eigen::Index>(c.dimension));
  }

  if (top.has("grid")) {
    Reader grid(top.raw("grid"), "grid", errors);
    if (!grid.object_ok()) {
      errors.push_back("grid: expected an object");
    } else {
      grid.only({"horizon", "steps", "times"});
      grid.number("horizon", c.horizon);
      grid.integer("steps", c.steps);
      grid.numbers("times", c.times);
      if (grid.has("times") && (grid.has("steps") || grid.has("horizon")))
        errors.push_back("grid: give either times or horizon/steps, not both");
    }
  }
  c.origin = Vector::Zero(static_cast<Eigen::Index>(c.dimension));
  top.vector("origin", c.origin);
  top.integer("paths", c.paths);
  top.string("transform", c.transform);
  top.integer("seed", c.seed);
  top.number("alpha", c.alpha);
  top.integer("bootstrap", c.bootstrap);
  top.integer("permutations", c.permutations);
  if (top.has("output")) {
    std::string out;
    top.string("output", out);
    c.output = out;
  }
  if (top.has("tests")) {
    const auto& tests = top.raw("tests");
    if (!tests.is_array())
      errors.push_back("tests: expected an array");
    else
      for (std::size_t i = 0; i < tests.size(); ++i)
        c.tests.push_back(parse_test(tests[i], "tests[" + std::to_string(i) + "]", errors));
  }
  collect_errors(c, errors);
  if (!errors.empty()) throw ConfigInvalid(errors);
  return c;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid({std::string("config: not valid JSON: ") + e.what()});
  }
  return parse_config(j);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid({"config: cannot open " + path});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate(const ScenarioConfig& config) {
  std::vector<std::string> errors;
  collect_errors(config, errors);
  if (!errors.empty()) throw ConfigInvalid(errors);
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = name;
  j["law"]["dimension"] = dimension;
  j["law"]["drift"] = vector_json(drift);
  j["law"]["covariance"] = matrix_json(covariance);
  if (times.empty()) {
    j["grid"]["horizon"] = horizon;
    j["grid"]["steps"] = steps;
  } else {
    j["grid"]["times"] = times;
  }
  j["origin"] = vector_json(origin);
  j["paths"] = paths;
  j["transform"] = transform;
  j["seed"] = seed;
  j["alpha"] = alpha;
  j["bootstrap"] = bootstrap;
  j["permutations"] = permutations;
  auto tj = ojson::array();
  for (const auto& t : tests) tj.push_back(test_json(t));
  j["tests"] = tj;
  if (output) j["output"] = *output;
  return j;
}

std::vector<std::string> builtin_names() {
  return {"affine-sanity", "counterexample", "pde-diagnostics"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
  auto base = [] {
    ScenarioConfig c;
    c.dimension = 2;
    c.drift = Vector::Zero(2);
    c.covariance = Matrix::Identity(2, 2);
    c.origin = Vector::Zero(2);
    c.horizon = 2.0;
    c.steps = 1000;
    c.paths = 100000;
    c.seed = 20240601;
    return c;
  };
  auto test = [](std::string type, bool expect_reject = false) {
    TestSpec t;
    t.type = std::move(type);
    t.expect_reject = expect_reject;
    return t;
  };
  if (name == "affine-sanity") {
    auto c = base();
    c.name = name;
    c.transform = "affine(P=[[2,0],[1,1]],q=[3,-1])";
    auto t = test("conformance");
    t.times = {0.5, 1.0, 2.0};
    t.windows = {{{0, 1}, {1, 2}}};
    c.tests = {t};
    return c;
  }
  if (name == "counterexample") {
    auto c = base();
    c.name = name;
    c.transform = "radial_lift(angle_multiply(2))";
    auto m = test("marginal_two_sample");
    m.times = {0.5, 1.0, 2.0};
    auto t = test("conformance", true);
    t.times = {0.5, 1.0, 2.0};
    t.windows = {{{0, 1}, {1, 2}}};
    c.tests = {m, t};
    return c;
  }
  if (name == "pde-diagnostics") {
    auto c = base();
    c.name = name;
    c.paths = 0;
    DomainSpec square;
    square.lo = Vector::Constant(2, -1.0);
    square.hi = Vector::Constant(2, 1.0);
    auto grid_test = [&](std::string type, std::string field, double tol, bool reject,
                         double target = 1.0) {
      auto t = test(std::move(type), reject);
      t.field = std::move(field);
      t.domain = square;
      t.tolerance = tol;
      t.target = target;
      return t;
    };
    const std::string unit = "affine(P=[0.6,0.8],q=0)";
    const std::string saddle = "harmonic(re_z^2)";
    c.tests.push_back(grid_test("laplacian", unit, 1e-6, false));
    c.tests.push_back(grid_test("eikonal", unit, 1e-6, false));
    c.tests.push_back(grid_test("gradient_constancy", unit, 1e-4, false));
    c.tests.push_back(grid_test("laplacian", saddle, 1e-6, false));
    c.tests.push_back(grid_test("eikonal", saddle, 1e-6, true));
    c.tests.push_back(grid_test("gradient_constancy", saddle, 1e-4, true));
    c.tests.push_back(grid_test("laplacian", "square(i=0)", 1e-6, true));

    auto mv = test("mean_value");
    mv.field = saddle;
    mv.x = Vector(2);
    mv.x << 0.3, 0.4;
    mv.r = 0.5;
    c.tests.push_back(mv);
    auto mv2 = test("mean_value", true);
    mv2.field = "square(i=0)";
    mv2.x = Vector::Zero(2);
    mv2.r = 1.0;
    c.tests.push_back(mv2);

    auto sm = test("smoothing");
    sm.field = "square(i=0)";
    sm.x = Vector::Zero(2);
    sm.mu = 1.0;
    c.tests.push_back(sm);
    auto sm0 = sm;
    sm0.mu = 0.0;
    sm0.expect_reject = true;
    c.tests.push_back(sm0);

    auto ja = test("jensen");
    ja.field = unit;
    ja.x = Vector::Zero(2);
    c.tests.push_back(ja);
    auto js = test("jensen", true);
    js.field = saddle;
    js.x = Vector::Zero(2);
    c.tests.push_back(js);

    for (std::size_t n = 1; n <= 6; ++n) {
      auto bv = test("ball_volume");
      bv.n = n;
      c.tests.push_back(bv);
    }
    return c;
  }
  throw ConfigInvalid({"builtin: unknown scenario '" + name + "'"});
}

}  // namespace bmcheck::cli
