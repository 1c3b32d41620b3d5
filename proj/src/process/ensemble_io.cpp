#include "bmcheck/process/ensemble_io.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::process {
namespace {

static_assert(std::endian::native == std::endian::little,
              "ensemble binary I/O assumes a little-endian host");

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw InvalidArgument("read_binary: truncated header");
  return v;
}

}  // namespace

void write_binary(const PathEnsemble& ensemble, std::ostream& out) {
  put_u64(out, ensemble.num_paths());
  put_u64(out, ensemble.num_times());
  put_u64(out, ensemble.dimension());
  const auto& times = ensemble.grid().times();
  out.write(reinterpret_cast<const char*>(times.data()),
            static_cast<std::streamsize>(times.size() * sizeof(double)));
  const auto data = ensemble.data();
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw Error("write_binary: stream failure");
}

PathEnsemble read_binary(std::istream& in) {
  const std::uint64_t paths = get_u64(in);
  const std::uint64_t times = get_u64(in);
  const std::uint64_t dim = get_u64(in);
  if (paths == 0 || times < 2 || dim == 0 || dim > (1u << 20) ||
      times > (std::uint64_t{1} << 32) || paths > (std::uint64_t{1} << 40))
    throw InvalidArgument("read_binary: implausible header");
  std::vector<double> grid(times);
  if (!in.read(reinterpret_cast<char*>(grid.data()),
               static_cast<std::streamsize>(times * sizeof(double))))
    throw InvalidArgument("read_binary: truncated grid");
  std::vector<double> values(paths * times * dim);
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw InvalidArgument("read_binary: truncated values");
  Vector origin(static_cast<Eigen::Index>(dim));
  for (std::uint64_t j = 0; j < dim; ++j) origin[static_cast<Eigen::Index>(j)] = values[j];
  return PathEnsemble(TimeGrid(std::move(grid)), paths, dim, std::move(values), 0,
                      origin);
}

void write_csv(const PathEnsemble& ensemble, std::ostream& out) {
  const std::size_t d = ensemble.dimension();
  out << "path,step,time";
  for (std::size_t j = 0; j < d; ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t p = 0; p < ensemble.num_paths(); ++p) {
    for (std::size_t k = 0; k < ensemble.num_times(); ++k) {
      out << p << ',' << k << ',' << format_number(ensemble.grid()[k]);
      for (double v : ensemble.point(p, k)) out << ',' << format_number(v);
      out << '\n';
    }
  }
  if (!out) throw Error("write_csv: stream failure");
}

}  // namespace bmcheck::process
