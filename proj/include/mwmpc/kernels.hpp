#pragma once

#include "mwmpc/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

// Data-parallel kernels. Every *_parallel routine has a *_serial twin that is the
// reference: results are identical bit for bit regardless of thread count because
// each item is evaluated independently and reductions are order-independent
// (max, or argmin with a total-order tie-break).
namespace mwmpc::kernels {

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  Vector point;

  bool found() const { return point.size() > 0; }
};

/// Lower finite cost wins; equal costs go to the lexicographically smaller point.
/// Non-finite costs never win.
bool better(const Candidate& a, const Candidate& b);

/// Cartesian grid over flat coordinates; the last coordinate varies fastest.
struct Grid {
  std::vector<std::vector<double>> axes;

  /// Number of grid points, saturating at UINT64_MAX.
  std::uint64_t size() const;
  Vector point(std::uint64_t index) const;
};

using CostFn = std::function<double(const Vector&)>;

Candidate grid_argmin_serial(const Grid& grid, const CostFn& cost);
Candidate grid_argmin_parallel(const Grid& grid, const CostFn& cost);

/// max_i f(i) over [0, count); NaN anywhere makes the result NaN; -inf when count == 0.
double max_over_serial(std::size_t count, const std::function<double(std::size_t)>& f);
double max_over_parallel(std::size_t count, const std::function<double(std::size_t)>& f);

/// Calls f(i) for every i in [0, count). The first exception thrown by any item is
/// rethrown after the loop.
void for_each_serial(std::size_t count, const std::function<void(std::size_t)>& f);
void for_each_parallel(std::size_t count, const std::function<void(std::size_t)>& f,
                       int num_threads = 0);

}  // namespace mwmpc::kernels
