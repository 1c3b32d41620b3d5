#include "bmcheck/pde/residuals.hpp"

#include <cmath>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/parallel.hpp"

namespace bmcheck::pde {
namespace {

namespace tf = transforms;

nlohmann::ordered_json vector_json(const Vector& v) {
  auto j = nlohmann::ordered_json::array();
  for (double x : v) j.push_back(x);
  return j;
}

void require_scalar(const tf::Transform& u, const GridDomain& domain, const char* what) {
  if (!u.is_scalar()) throw InvalidArgument(std::string(what) + ": field must be scalar");
  if (u.input_dim() != domain.dimension())
    throw DimensionMismatch(std::string(what) + ": field and domain dimensions differ");
  if (domain.size() == 0) throw InvalidArgument(std::string(what) + ": empty domain");
}

// Fills max_abs, mean_abs, argmax and the verdict from per-point values,
// skipping points flagged in `skip`.
void summarise(ResidualReport& r, const std::vector<Vector>& points,
               const std::vector<double>& values, const std::vector<std::uint8_t>& skip) {
  double sum = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (skip[i]) {
      r.excluded.push_back(points[i]);
      continue;
    }
    sum += values[i];
    ++used;
    if (r.argmax.size() == 0 || values[i] > r.max_abs) {
      r.max_abs = values[i];
      r.argmax = points[i];
    }
  }
  r.mean_abs = used ? sum / static_cast<double>(used) : 0.0;
  r.verdict = used > 0 && r.max_abs <= r.tolerance ? Verdict::pass : Verdict::reject;
  r.details["points"] = used;
  r.details["excluded"] = r.excluded.size();
}

}  // namespace

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["max_abs"] = r.max_abs;
  j["mean_abs"] = r.mean_abs;
  j["argmax"] = vector_json(r.argmax);
  j["tolerance"] = r.tolerance;
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.signed_residual) j["signed_residual"] = *r.signed_residual;
  if (r.standard_error) j["standard_error"] = *r.standard_error;
  auto ex = nlohmann::ordered_json::array();
  for (const auto& p : r.excluded) ex.push_back(vector_json(p));
  j["excluded_points"] = ex;
  j["details"] = r.details;
  return j;
}

ResidualReport laplacian_residual(const tf::Transform& u, const GridDomain& domain,
                                  double tolerance) {
  require_scalar(u, domain, "laplacian_residual");
  const auto points = domain.points();
  const double h = domain.spacing();
  const auto n = static_cast<Eigen::Index>(domain.dimension());
  std::vector<double> values(points.size());
  std::vector<std::uint8_t> bad(points.size(), 0), skip(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    const Vector& x = points[i];
    if (!u.in_domain(x)) {
      bad[i] = 1;
      return;
    }
    const double centre = u.scalar(x);
    double lap = 0;
    Vector y = x;
    for (Eigen::Index j = 0; j < n; ++j) {
      y[j] = x[j] + h;
      if (!u.in_domain(y)) bad[i] = 1;
      const double up = bad[i] ? 0.0 : u.scalar(y);
      y[j] = x[j] - h;
      if (!u.in_domain(y)) bad[i] = 1;
      const double down = bad[i] ? 0.0 : u.scalar(y);
      y[j] = x[j];
      lap += up - 2.0 * centre + down;
    }
    values[i] = std::abs(lap / (h * h));
  });
  for (std::size_t i = 0; i < points.size(); ++i)
    if (bad[i])
      throw HaloOutsideEvaluationDomain("laplacian_residual: stencil around " +
                                        format_vector(points[i]) + " leaves the domain of " +
                                        u.name());
  ResidualReport r;
  r.name = "laplacian(" + u.name() + ")";
  r.tolerance = tolerance;
  r.details["field"] = u.name();
  r.details["mask"] = domain.mask_name();
  r.details["spacing"] = h;
  summarise(r, points, values, skip);
  return r;
}

ResidualReport eikonal_residual(const tf::Transform& u, const GridDomain& domain,
                                double target, double tolerance,
                                tf::DerivativeMethod method) {
  require_scalar(u, domain, "eikonal_residual");
  if (!(target >= 0.0)) throw InvalidArgument("eikonal_residual: target must be >= 0");
  const auto points = domain.points();
  std::vector<double> values(points.size());
  std::vector<std::uint8_t> skip(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      values[i] = std::abs(tf::gradient(u, points[i], method).norm() - target);
    } catch (const NotDifferentiableHere&) {
      skip[i] = 1;
    }
  });
  ResidualReport r;
  r.name = "eikonal(" + u.name() + ")";
  r.tolerance = tolerance;
  r.details["field"] = u.name();
  r.details["mask"] = domain.mask_name();
  r.details["target"] = target;
  summarise(r, points, values, skip);
  return r;
}

std::pair<Vector, ResidualReport> gradient_constancy(const tf::Transform& u,
                                                     const GridDomain& domain,
                                                     double tolerance,
                                                     tf::DerivativeMethod method) {
  require_scalar(u, domain, "gradient_constancy");
  if (!domain.connected())
    throw DisconnectedMask("gradient_constancy: masked set of " + domain.mask_name() +
                           " is not connected");
  const auto points = domain.points();
  const auto n = static_cast<Eigen::Index>(domain.dimension());
  std::vector<Vector> grads(points.size());
  std::vector<std::uint8_t> skip(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      grads[i] = tf::gradient(u, points[i], method);
    } catch (const NotDifferentiableHere&) {
      skip[i] = 1;
    }
  });
  Vector p = Vector::Zero(n);
  std::size_t used = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!skip[i]) {
      p += grads[i];
      ++used;
    }
  if (used) p /= static_cast<double>(used);
  std::vector<double> values(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!skip[i]) values[i] = (grads[i] - p).norm();
  ResidualReport r;
  r.name = "gradient_constancy(" + u.name() + ")";
  r.tolerance = tolerance;
  r.details["field"] = u.name();
  r.details["mask"] = domain.mask_name();
  r.details["p"] = vector_json(p);
  summarise(r, points, values, skip);
  return {p, r};
}

}  // namespace bmcheck::pde
