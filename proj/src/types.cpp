#include "mwmpc/types.hpp"

#include "mwmpc/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mwmpc {

DimensionError::DimensionError(std::string what, std::size_t index, std::size_t expected,
                               std::size_t actual)
    : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
            std::to_string(actual) +
            (index == npos ? std::string() : " at index " + std::to_string(index))),
      index_(index),
      expected_(expected),
      actual_(actual) {}

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) {
    throw DimensionError("box bounds", DimensionError::npos, lower.size(), upper.size());
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw std::invalid_argument("box: lower bound exceeds upper bound at component " +
                                  std::to_string(i));
    }
  }
}

Box Box::uniform(int dim, double lo, double hi) {
  return Box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

bool Box::contains(const Vector& v) const {
  if (v.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] >= lower[i] && v[i] <= upper[i])) return false;
  }
  return true;
}

Vector Box::clamp(const Vector& v) const {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i], lower[i], upper[i]);
  return out;
}

Vector ControlProfile::flatten() const {
  const int nu = control_dim();
  Vector flat(static_cast<Eigen::Index>(controls.size()) * nu);
  for (std::size_t i = 0; i < controls.size(); ++i) {
    flat.segment(static_cast<Eigen::Index>(i) * nu, nu) = controls[i];
  }
  return flat;
}

ControlProfile ControlProfile::from_flat(const Vector& flat, int control_dim) {
  if (control_dim <= 0 || flat.size() % control_dim != 0) {
    throw DimensionError("flat profile", DimensionError::npos, control_dim, flat.size());
  }
  ControlProfile p;
  const Eigen::Index n = flat.size() / control_dim;
  p.controls.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) p.controls.emplace_back(flat.segment(i * control_dim, control_dim));
  return p;
}

ControlProfile ControlProfile::zeros(int horizon, int control_dim) {
  ControlProfile p;
  p.controls.assign(horizon, Vector::Zero(control_dim));
  return p;
}

bool ControlProfile::operator==(const ControlProfile& other) const {
  if (controls.size() != other.controls.size()) return false;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i].size() != other.controls[i].size() || controls[i] != other.controls[i]) return false;
  }
  return true;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace mwmpc
