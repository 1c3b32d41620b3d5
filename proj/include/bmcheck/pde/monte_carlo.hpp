#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "bmcheck/common/rng.hpp"
#include "bmcheck/pde/residuals.hpp"
#include "bmcheck/process/gaussian_law.hpp"

namespace bmcheck::pde {

/// Lebesgue measure of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(std::size_t n);

/// pi^{n/2} / Gamma(n/2). Equals ball_volume only for n = 2.
double ball_volume_gamma_half(std::size_t n);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Mean of draw(rng) over `samples` draws. Draws are split in fixed blocks,
/// each with its own substream of key, so the estimate does not depend on the
/// thread count.
MonteCarloEstimate monte_carlo_mean(std::size_t samples, std::uint64_t key,
                                    const std::function<double(Substream&)>& draw);

/// Uniform point in the ball of radius r around the origin of R^n.
Vector uniform_in_ball(Substream& rng, std::size_t n, double r);

/// Cube-rejection estimate of the unit-ball volume against ball_volume(n).
ResidualReport ball_volume_check(std::size_t n, std::size_t samples, std::uint64_t seed);

/// Average of u over the ball x + rB minus u(x).
ResidualReport mean_value_check(const transforms::Transform& u, const Vector& x, double r,
                                std::size_t samples, std::uint64_t seed);

/// E f(x + tau b + sqrt(tau) L Z) - tau mu - f(x).
ResidualReport smoothing_representation_check(const transforms::Transform& f,
                                              const process::GaussianLaw& law, double tau,
                                              const Vector& x, double mu,
                                              std::size_t samples, std::uint64_t seed);

struct JensenGapReport {
  double lhs = 0.0;  ///< E |grad f(Y)|
  double rhs = 0.0;  ///< |E grad f(Y)|
  double gap = 0.0;
  double lhs_standard_error = 0.0;
  double gap_standard_error = 0.0;
  Vector p_x;        ///< estimated mean gradient
  std::size_t samples = 0;
  std::size_t resampled = 0;
  Verdict verdict = Verdict::pass;  ///< pass iff gap <= 3 standard errors
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const JensenGapReport& report);

/// Y ~ x + tau b + sqrt(tau) L Z. Draws landing where f has no derivative are
/// replaced by fresh draws.
JensenGapReport jensen_gap(const transforms::Transform& f, const process::GaussianLaw& law,
                           double tau, const Vector& x, std::size_t samples,
                           std::uint64_t seed);

}  // namespace bmcheck::pde
