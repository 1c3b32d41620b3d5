#include "bmcheck/pde/monte_carlo.hpp"

#include <cmath>
#include <numbers>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/parallel.hpp"

namespace bmcheck::pde {
namespace {

namespace tf = transforms;

constexpr std::size_t kBlock = 1 << 14;

struct Moments {
  double n = 0, mean = 0, m2 = 0;

  void add(double v) {
    n += 1;
    const double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
  }
  // Chan et al. pairwise update.
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

Vector draw_gaussian(Substream& rng, const process::GaussianLaw& law, double tau,
                     const Vector& x) {
  Vector z(static_cast<Eigen::Index>(law.dimension()));
  for (auto& v : z) v = rng.normal();
  return x + tau * law.drift() + std::sqrt(tau) * (law.factor() * z);
}

ResidualReport mc_report(std::string name, const MonteCarloEstimate& est, double reference,
                         const Vector& where) {
  ResidualReport r;
  r.name = std::move(name);
  const double res = est.mean - reference;
  r.signed_residual = res;
  r.standard_error = est.standard_error;
  r.max_abs = r.mean_abs = std::abs(res);
  r.argmax = where;
  r.tolerance = 3.0 * est.standard_error;
  r.verdict = r.max_abs <= r.tolerance ? Verdict::pass : Verdict::reject;
  r.details["estimate"] = est.mean;
  r.details["reference"] = reference;
  r.details["samples"] = est.samples;
  return r;
}

void require_scalar_field(const tf::Transform& f, const Vector& x, const char* what) {
  if (!f.is_scalar()) throw InvalidArgument(std::string(what) + ": field must be scalar");
  if (static_cast<std::size_t>(x.size()) != f.input_dim())
    throw DimensionMismatch(std::string(what) + ": point and field dimensions differ");
}

}  // namespace

double ball_volume(std::size_t n) {
  if (n < 1) throw InvalidArgument("ball_volume: n must be >= 1");
  const double h = static_cast<double>(n) / 2.0;
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1.0));
}

double ball_volume_gamma_half(std::size_t n) {
  if (n < 1) throw InvalidArgument("ball_volume_gamma_half: n must be >= 1");
  const double h = static_cast<double>(n) / 2.0;
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

MonteCarloEstimate monte_carlo_mean(std::size_t samples, std::uint64_t key,
                                    const std::function<double(Substream&)>& draw) {
  if (samples < 2) throw InvalidArgument("monte_carlo_mean: need at least two samples");
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<Moments> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Substream rng(key, b);
    const std::size_t count = std::min(kBlock, samples - b * kBlock);
    for (std::size_t i = 0; i < count; ++i) partial[b].add(draw(rng));
  });
  Moments all;
  for (const auto& m : partial) all.merge(m);
  const double var = all.m2 / (all.n - 1);
  return {all.mean, std::sqrt(var / all.n), samples};
}

Vector uniform_in_ball(Substream& rng, std::size_t n, double r) {
  Vector g(static_cast<Eigen::Index>(n));
  double norm = 0;
  do {
    for (auto& v : g) v = rng.normal();
    norm = g.norm();
  } while (norm == 0.0);
  const double radius = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  return g * (radius / norm);
}

ResidualReport ball_volume_check(std::size_t n, std::size_t samples, std::uint64_t seed) {
  const double cube = std::ldexp(1.0, static_cast<int>(n));
  const auto est = monte_carlo_mean(samples, derive_key(seed, "ball_volume", n),
                                    [n, cube](Substream& rng) {
                                      double s = 0;
                                      for (std::size_t j = 0; j < n; ++j) {
                                        const double v = 2.0 * rng.uniform() - 1.0;
                                        s += v * v;
                                      }
                                      return s <= 1.0 ? cube : 0.0;
                                    });
  auto r = mc_report("ball_volume(n=" + std::to_string(n) + ")", est, ball_volume(n),
                     Vector::Zero(static_cast<Eigen::Index>(n)));
  r.details["formula"] = "pi^(n/2) / Gamma(n/2 + 1)";
  r.details["value"] = ball_volume(n);
  r.details["gamma_half_value"] = ball_volume_gamma_half(n);
  r.details["note"] = n == 2 ? "pi^(n/2) / Gamma(n/2) agrees with the unit-ball measure at n = 2"
                             : "pi^(n/2) / Gamma(n/2) is not the unit-ball measure for n != 2";
  return r;
}

ResidualReport mean_value_check(const tf::Transform& u, const Vector& x, double r,
                                std::size_t samples, std::uint64_t seed) {
  require_scalar_field(u, x, "mean_value_check");
  if (!(r > 0.0)) throw InvalidArgument("mean_value_check: radius must be > 0");
  const std::size_t n = u.input_dim();
  const auto est = monte_carlo_mean(samples, derive_key(seed, "mean_value"),
                                    [&](Substream& rng) {
                                      const Vector y = x + uniform_in_ball(rng, n, r);
                                      if (!u.in_domain(y))
                                        throw InvalidArgument(
                                            "mean_value_check: ball leaves the domain of " +
                                            u.name());
                                      return u.scalar(y);
                                    });
  auto rep = mc_report("mean_value(" + u.name() + ")", est, u.scalar(x), x);
  rep.details["radius"] = r;
  rep.details["ball_volume"] = ball_volume(n) * std::pow(r, static_cast<double>(n));
  return rep;
}

ResidualReport smoothing_representation_check(const tf::Transform& f,
                                              const process::GaussianLaw& law, double tau,
                                              const Vector& x, double mu,
                                              std::size_t samples, std::uint64_t seed) {
  require_scalar_field(f, x, "smoothing_representation_check");
  if (law.dimension() != f.input_dim())
    throw DimensionMismatch("smoothing_representation_check: law and field dimensions differ");
  if (!(tau > 0.0)) throw InvalidArgument("smoothing_representation_check: tau must be > 0");
  const auto est = monte_carlo_mean(samples, derive_key(seed, "smoothing"),
                                    [&](Substream& rng) {
                                      return f.scalar(draw_gaussian(rng, law, tau, x));
                                    });
  MonteCarloEstimate shifted = est;
  shifted.mean -= tau * mu;
  auto r = mc_report("smoothing(" + f.name() + ")", shifted, f.scalar(x), x);
  r.details["tau"] = tau;
  r.details["mu"] = mu;
  return r;
}

nlohmann::ordered_json to_json(const JensenGapReport& r) {
  nlohmann::ordered_json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["lhs_standard_error"] = r.lhs_standard_error;
  j["gap_standard_error"] = r.gap_standard_error;
  auto p = nlohmann::ordered_json::array();
  for (double v : r.p_x) p.push_back(v);
  j["p_x"] = p;
  j["samples"] = r.samples;
  j["resampled"] = r.resampled;
  j["verdict"] = std::string(to_string(r.verdict));
  j["details"] = r.details;
  return j;
}

JensenGapReport jensen_gap(const tf::Transform& f, const process::GaussianLaw& law,
                           double tau, const Vector& x, std::size_t samples,
                           std::uint64_t seed) {
  require_scalar_field(f, x, "jensen_gap");
  if (law.dimension() != f.input_dim())
    throw DimensionMismatch("jensen_gap: law and field dimensions differ");
  if (!(tau > 0.0)) throw InvalidArgument("jensen_gap: tau must be > 0");
  if (samples < 2) throw InvalidArgument("jensen_gap: need at least two samples");
  const auto n = static_cast<Eigen::Index>(f.input_dim());
  const auto key = derive_key(seed, "jensen");

  // Gradients are kept so the influence terms can use the final mean.
  Matrix grads(n, static_cast<Eigen::Index>(samples));
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::size_t> retries(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    Substream rng(key, b);
    const std::size_t begin = b * kBlock, end = std::min(samples, begin + kBlock);
    for (std::size_t i = begin; i < end; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 1000)
          throw NotDifferentiableHere("jensen_gap: too many non-differentiable draws");
        try {
          grads.col(static_cast<Eigen::Index>(i)) =
              tf::gradient(f, draw_gaussian(rng, law, tau, x));
          break;
        } catch (const NotDifferentiableHere&) {
          ++retries[b];
        }
      }
    }
  });

  JensenGapReport r;
  r.samples = samples;
  for (auto v : retries) r.resampled += v;
  r.p_x = grads.rowwise().mean();
  r.rhs = r.p_x.norm();
  const Vector dir = r.rhs > 0 ? Vector(r.p_x / r.rhs) : Vector::Zero(n);
  Moments norm_m, psi_m;
  for (Eigen::Index i = 0; i < grads.cols(); ++i) {
    const double g = grads.col(i).norm();
    norm_m.add(g);
    psi_m.add(g - dir.dot(grads.col(i)));
  }
  const double ns = static_cast<double>(samples);
  r.lhs = norm_m.mean;
  // mean psi = lhs - rhs
  r.gap = psi_m.mean;
  r.lhs_standard_error = std::sqrt(norm_m.m2 / (ns - 1) / ns);
  r.gap_standard_error = std::sqrt(psi_m.m2 / (ns - 1) / ns);
  r.verdict = r.gap <= 3.0 * r.gap_standard_error ? Verdict::pass : Verdict::reject;
  r.details["field"] = f.name();
  r.details["tau"] = tau;
  r.details["x"] = format_vector(x);
  return r;
}

}  // namespace bmcheck::pde
