#include "bmcheck/process/path_ensemble.hpp"

#include "bmcheck/common/errors.hpp"

namespace bmcheck::process {

PathEnsemble::PathEnsemble(TimeGrid grid, std::size_t paths,
                           std::size_t dimension, std::vector<double> values,
                           std::uint64_t seed, Vector origin)
    : grid_(std::move(grid)),
      paths_(paths),
      dimension_(dimension),
      values_(std::move(values)),
      seed_(seed),
      origin_(std::move(origin)) {
  if (paths_ < 1) throw InvalidArgument("PathEnsemble: need at least one path");
  if (dimension_ < 1) throw InvalidArgument("PathEnsemble: dimension must be >= 1");
  if (values_.size() != paths_ * grid_.size() * dimension_)
    throw DimensionMismatch("PathEnsemble: array shape does not match N x (K+1) x d");
  if (static_cast<std::size_t>(origin_.size()) != dimension_)
    throw DimensionMismatch("PathEnsemble: origin has wrong dimension");
  for (std::size_t p = 0; p < paths_; ++p) {
    const auto start = point(p, 0);
    for (std::size_t j = 0; j < dimension_; ++j)
      if (start[j] != origin_[static_cast<Eigen::Index>(j)])
        throw InvalidArgument("PathEnsemble: path does not start at origin");
  }
}

std::span<const double> PathEnsemble::point(std::size_t path,
                                            std::size_t step) const {
  return {values_.data() + (path * grid_.size() + step) * dimension_, dimension_};
}

SampleMatrix PathEnsemble::marginal(std::size_t step) const {
  if (step >= grid_.size()) throw InvalidArgument("marginal: step out of range");
  SampleMatrix out(static_cast<Eigen::Index>(paths_),
                   static_cast<Eigen::Index>(dimension_));
  for (std::size_t p = 0; p < paths_; ++p) {
    const auto v = point(p, step);
    for (std::size_t j = 0; j < dimension_; ++j)
      out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = v[j];
  }
  return out;
}

SampleMatrix PathEnsemble::increments(std::size_t from, std::size_t to) const {
  if (from >= grid_.size() || to >= grid_.size())
    throw InvalidArgument("increments: step out of range");
  SampleMatrix out(static_cast<Eigen::Index>(paths_),
                   static_cast<Eigen::Index>(dimension_));
  for (std::size_t p = 0; p < paths_; ++p) {
    const auto a = point(p, from);
    const auto b = point(p, to);
    for (std::size_t j = 0; j < dimension_; ++j)
      out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = b[j] - a[j];
  }
  return out;
}

std::vector<double> PathEnsemble::release_values() && {
  return std::move(values_);
}

}  // namespace bmcheck::process
