#include "bmcheck/transforms/parse.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/transforms/catalog.hpp"

namespace bmcheck::transforms {
namespace {

struct Arg {
  std::string key;  // empty for positional
  std::string value;
};

struct Call {
  std::string head;
  std::vector<Arg> args;
  bool has_parens = false;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(std::string_view text, const std::string& why) {
  throw InvalidArgument("transform '" + std::string(text) + "': " + why);
}

Call split_call(std::string_view raw) {
  const std::string text = trim(raw);
  Call call;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    call.head = text;
    if (call.head.empty()) fail(raw, "empty identifier");
    return call;
  }
  if (text.back() != ')') fail(raw, "missing closing parenthesis");
  call.head = trim(std::string_view(text).substr(0, open));
  call.has_parens = true;
  const std::string body = text.substr(open + 1, text.size() - open - 2);

  int depth = 0;
  std::string current;
  auto flush = [&] {
    std::string piece = trim(current);
    current.clear();
    if (piece.empty()) return;
    Arg arg;
    int d = 0;
    for (std::size_t i = 0; i < piece.size(); ++i) {
      const char c = piece[i];
      if (c == '(' || c == '[') ++d;
      if (c == ')' || c == ']') --d;
      if (c == '=' && d == 0) {
        arg.key = trim(std::string_view(piece).substr(0, i));
        arg.value = trim(std::string_view(piece).substr(i + 1));
        call.args.push_back(std::move(arg));
        return;
      }
    }
    arg.value = piece;
    call.args.push_back(std::move(arg));
  };
  for (char c : body) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) fail(raw, "unbalanced brackets");
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    current += c;
  }
  if (depth != 0) fail(raw, "unbalanced brackets");
  flush();
  return call;
}

double parse_number(std::string_view text, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(text, "'" + value + "' is not a finite number");
  }
}

nlohmann::json parse_json(std::string_view text, const std::string& value) {
  try {
    return nlohmann::json::parse(value);
  } catch (const std::exception&) {
    fail(text, "'" + value + "' is not a valid array");
  }
}

Vector to_vector(std::string_view text, const nlohmann::json& j) {
  if (j.is_number()) {
    Vector v(1);
    v << j.get<double>();
    return v;
  }
  if (!j.is_array() || j.empty()) fail(text, "expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(text, "array entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix to_matrix(std::string_view text, const nlohmann::json& j) {
  if (j.is_array() && !j.empty() && j[0].is_number()) {
    // A flat array is a single row: a scalar linear form.
    return to_vector(text, j).transpose();
  }
  if (!j.is_array() || j.empty()) fail(text, "expected a matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(text, "matrix rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(text, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) fail(text, "matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

class ArgReader {
 public:
  ArgReader(std::string_view text, const Call& call) : text_(text), call_(call) {}

  /// Named argument, or the positional one at `position` when unnamed.
  std::optional<std::string> get(const std::string& key,
                                 std::optional<std::size_t> position = {}) {
    for (std::size_t i = 0; i < call_.args.size(); ++i) {
      if (call_.args[i].key == key) {
        used_.push_back(i);
        return call_.args[i].value;
      }
    }
    if (position) {
      std::size_t seen = 0;
      for (std::size_t i = 0; i < call_.args.size(); ++i) {
        if (!call_.args[i].key.empty()) continue;
        if (seen++ == *position) {
          used_.push_back(i);
          return call_.args[i].value;
        }
      }
    }
    return std::nullopt;
  }

  std::string require(const std::string& key,
                      std::optional<std::size_t> position = {}) {
    auto v = get(key, position);
    if (!v) fail(text_, "missing argument '" + key + "'");
    return *v;
  }

  void finish() const {
    for (std::size_t i = 0; i < call_.args.size(); ++i) {
      bool used = false;
      for (auto u : used_) used = used || u == i;
      if (!used)
        fail(text_, "unexpected argument '" +
                        (call_.args[i].key.empty() ? call_.args[i].value
                                                   : call_.args[i].key) +
                        "'");
    }
  }

 private:
  std::string_view text_;
  const Call& call_;
  std::vector<std::size_t> used_;
};

std::size_t parse_index(std::string_view text, const std::string& value) {
  const double v = parse_number(text, value);
  if (v < 0 || v != std::floor(v)) fail(text, "index must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

void require_dim(std::string_view text, std::size_t expected, std::size_t got) {
  if (expected != got)
    throw DimensionMismatch("transform '" + std::string(text) + "' acts on R^" +
                            std::to_string(expected) + ", input space is R^" +
                            std::to_string(got));
}

SphereMap parse_sphere_map(std::string_view text, const std::string& value,
                           std::size_t n) {
  const Call call = split_call(value);
  ArgReader args(text, call);
  if (call.head == "identity") {
    args.finish();
    return SphereMap::identity(n);
  }
  if (call.head == "angle_multiply") {
    const double k = parse_number(text, args.require("k", 0));
    args.finish();
    if (k != std::floor(k)) fail(text, "angle multiplier must be an integer");
    require_dim(text, 2, n);
    return SphereMap::angle_multiply(static_cast<int>(k));
  }
  if (call.head == "rotation") {
    if (auto theta = args.get("theta", 0)) {
      args.finish();
      require_dim(text, 2, n);
      return SphereMap::planar_rotation(parse_number(text, *theta));
    }
    const Matrix r = to_matrix(text, parse_json(text, args.require("R")));
    args.finish();
    require_dim(text, static_cast<std::size_t>(r.cols()), n);
    return SphereMap::rotation(r);
  }
  fail(text, "unknown sphere map '" + call.head + "'");
}

Transform parse_call(std::string_view text, std::string_view raw, std::size_t n) {
  const Call call = split_call(raw);
  ArgReader args(text, call);
  const std::string& head = call.head;

  if (head == "identity") {
    args.finish();
    return identity(n);
  }
  if (head == "affine") {
    const Matrix p = to_matrix(text, parse_json(text, args.require("P", 0)));
    Vector q = Vector::Zero(p.rows());
    if (auto qs = args.get("q", 1)) q = to_vector(text, parse_json(text, *qs));
    args.finish();
    require_dim(text, static_cast<std::size_t>(p.cols()), n);
    if (q.size() != p.rows()) fail(text, "q must have one entry per row of P");
    return affine(p, q);
  }
  if (head == "radial_lift") {
    const SphereMap h = parse_sphere_map(text, args.require("h", 0), n);
    args.finish();
    return radial_lift(h);
  }
  if (head == "harmonic") {
    const std::string kind = args.require("u", 0);
    args.finish();
    HarmonicPart part;
    if (kind.rfind("re_z^", 0) == 0)
      part = HarmonicPart::real;
    else if (kind.rfind("im_z^", 0) == 0)
      part = HarmonicPart::imaginary;
    else
      fail(text, "harmonic entries are re_z^k or im_z^k");
    const double k = parse_number(text, kind.substr(5));
    if (k < 1 || k != std::floor(k)) fail(text, "harmonic power must be >= 1");
    require_dim(text, 2, n);
    return harmonic_power(static_cast<int>(k), part);
  }
  if (head == "square") {
    std::size_t i = 0;
    if (auto v = args.get("i", 0)) i = parse_index(text, *v);
    args.finish();
    return coordinate_square(n, i);
  }
  if (head == "cubic") {
    const double eps = parse_number(text, args.require("eps", 0));
    args.finish();
    return cubic_perturbation(n, eps);
  }
  if (head == "constant") {
    double c = 0.0;
    if (auto v = args.get("c", 0)) c = parse_number(text, *v);
    args.finish();
    return constant(n, c);
  }
  if (head == "gaussian_bump") {
    args.finish();
    return gaussian_bump(n);
  }
  if (head == "component") {
    const std::size_t i = parse_index(text, args.require("i", 0));
    Transform inner = parse_call(text, args.require("of", 1), n);
    args.finish();
    return component(std::move(inner), i);
  }
  if (head == "compose") {
    Transform inner = parse_call(text, args.require("inner", 1), n);
    Transform outer = parse_call(text, args.require("outer", 0), inner.output_dim());
    args.finish();
    return compose(std::move(outer), std::move(inner));
  }
  if (head == "restrict") {
    Transform inner = parse_call(text, args.require("f", 0), n);
    Vector lo = to_vector(text, parse_json(text, args.require("lo")));
    Vector hi = to_vector(text, parse_json(text, args.require("hi")));
    args.finish();
    return restrict_to_box(std::move(inner), std::move(lo), std::move(hi));
  }
  fail(text, "unknown transform '" + head + "'");
}

}  // namespace

Transform parse_transform(std::string_view text, std::size_t input_dim) {
  if (input_dim < 1) throw InvalidArgument("parse_transform: input_dim must be >= 1");
  return parse_call(text, text, input_dim);
}

}  // namespace bmcheck::transforms
