#pragma once

#include <cmath>
#include <initializer_list>
#include <memory>
#include <vector>

#include "kfsd/fdata.hpp"
#include "kfsd/rng.hpp"

namespace kfsd::test {

inline GridPtr unit_grid(std::size_t m) { return std::make_shared<const Grid>(Grid::equidistant(0.0, 1.0, m)); }

// Sample of constant curves c_i on [0, 1].
inline FunctionalSample constants(std::initializer_list<double> levels, std::size_t m = 11) {
  RowMatrix v(static_cast<Eigen::Index>(levels.size()), static_cast<Eigen::Index>(m));
  Eigen::Index i = 0;
  for (double c : levels) v.row(i++).setConstant(c);
  return FunctionalSample(unit_grid(m), std::move(v));
}

inline Curve constant_curve(double c, std::size_t m = 11) {
  return Curve(unit_grid(m), Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), c));
}

// i.i.d. N(0, 1) values with a random per-curve level.
inline FunctionalSample random_sample(std::size_t n, std::size_t m, RngStream& rng) {
  RowMatrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double level = 2.0 * rng.normal();
    for (Eigen::Index k = 0; k < v.cols(); ++k) v(i, k) = level + rng.normal();
  }
  return FunctionalSample(unit_grid(m), std::move(v));
}

// Trapezoid L2 distance written out independently of the library.
inline double trapz_distance(std::span<const double> a, std::span<const double> b, double lo, double hi) {
  const std::size_t m = a.size();
  const double h = (hi - lo) / static_cast<double>(m - 1);
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double d = a[k] - b[k];
    s += (k == 0 || k + 1 == m ? 0.5 : 1.0) * h * d * d;
  }
  return std::sqrt(s);
}

inline std::vector<bool> to_bools(const std::vector<bool>& v) { return v; }

}  // namespace kfsd::test
