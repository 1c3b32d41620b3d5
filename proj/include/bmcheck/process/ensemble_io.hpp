#pragma once

#include <iosfwd>

#include "bmcheck/process/path_ensemble.hpp"

namespace bmcheck::process {

/// Binary layout, all little-endian:
///   header   u64 N, u64 K+1, u64 d
///   grid     K+1 f64 time points
///   values   N * (K+1) * d f64, path major (path id, time index, coordinate)
void write_binary(const PathEnsemble& ensemble, std::ostream& out);
PathEnsemble read_binary(std::istream& in);

/// CSV with header "path,step,time,x0,...,x{d-1}", one row per
/// (path, time index).
void write_csv(const PathEnsemble& ensemble, std::ostream& out);

}  // namespace bmcheck::process
