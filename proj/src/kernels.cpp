#include "mwmpc/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

namespace mwmpc::kernels {

bool better(const Candidate& a, const Candidate& b) {
  if (!a.found() || !std::isfinite(a.cost)) return false;
  if (!b.found() || !std::isfinite(b.cost)) return true;
  if (a.cost != b.cost) return a.cost < b.cost;
  return lexicographic_less(a.point, b.point);
}

std::uint64_t Grid::size() const {
  std::uint64_t total = 1;
  for (const auto& axis : axes) {
    if (axis.empty()) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / axis.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= axis.size();
  }
  return total;
}

Vector Grid::point(std::uint64_t index) const {
  Vector p(static_cast<Eigen::Index>(axes.size()));
  for (std::size_t j = axes.size(); j-- > 0;) {
    const std::uint64_t radix = axes[j].size();
    p[static_cast<Eigen::Index>(j)] = axes[j][index % radix];
    index /= radix;
  }
  return p;
}

Candidate grid_argmin_serial(const Grid& grid, const CostFn& cost) {
  Candidate best;
  const std::uint64_t n = grid.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    Candidate c;
    c.point = grid.point(i);
    c.cost = cost(c.point);
    if (better(c, best)) best = std::move(c);
  }
  return best;
}

Candidate grid_argmin_parallel(const Grid& grid, const CostFn& cost) {
  const auto n = static_cast<std::int64_t>(grid.size());
  Candidate best;
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel
  {
    Candidate local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        Candidate c;
        c.point = grid.point(static_cast<std::uint64_t>(i));
        c.cost = cost(c.point);
        if (better(c, local)) local = std::move(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    if (better(local, best)) best = std::move(local);
  }
  if (error) std::rethrow_exception(error);
  return best;
}

namespace {
double combine_max(double acc, double v) {
  if (std::isnan(acc) || std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
  return v > acc ? v : acc;
}
}  // namespace

double max_over_serial(std::size_t count, const std::function<double(std::size_t)>& f) {
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) acc = combine_max(acc, f(i));
  return acc;
}

double max_over_parallel(std::size_t count, const std::function<double(std::size_t)>& f) {
  std::vector<double> values(count);
  for_each_parallel(count, [&](std::size_t i) { values[i] = f(i); });
  double acc = -std::numeric_limits<double>::infinity();
  for (double v : values) acc = combine_max(acc, v);
  return acc;
}

void for_each_serial(std::size_t count, const std::function<void(std::size_t)>& f) {
  for (std::size_t i = 0; i < count; ++i) f(i);
}

void for_each_parallel(std::size_t count, const std::function<void(std::size_t)>& f, int num_threads) {
  if (num_threads <= 0) num_threads = omp_get_max_threads();
  std::exception_ptr error;
  std::mutex mu;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(num_threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mwmpc::kernels
