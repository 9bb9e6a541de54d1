#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "kfilter/polyline.hpp"
#include "kfilter/rng.hpp"

namespace kfilter {

// Discrete random walk: n points at times k*dt, increments iid Gaussian with
// per-coordinate stddev sigma*sqrt(dt).
inline Polyline brownian_path(size_t n, double dt, double sigma, int dim, uint64_t seed) {
  if (n < 2 || dt <= 0.0 || sigma <= 0.0 || dim < 1)
    throw std::invalid_argument("brownian_path: need n >= 2, dt > 0, sigma > 0, dim >= 1");
  Rng rng(seed);
  double step = sigma * std::sqrt(dt);
  Polyline p;
  p.points.reserve(n);
  p.times.reserve(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  p.points.push_back(x);
  p.times.push_back(0.0);
  for (size_t k = 1; k < n; ++k) {
    for (int i = 0; i < dim; ++i) x[i] += step * rng.gaussian();
    p.points.push_back(x);
    p.times.push_back(double(k) * dt);
  }
  return p;
}

// Average over t of ||(x(t+window) - x(t)) / window||^2, with x(t+window)
// linearly interpolated between samples.
inline double mean_square_velocity(const Polyline& p, double window) {
  p.validate();
  if (p.times.empty())
    throw std::invalid_argument("mean_square_velocity: polyline has no times");
  if (window <= 0.0)
    throw std::invalid_argument("mean_square_velocity: window must be positive");
  double t_end = p.times.back();
  if (p.times.front() + window > t_end)
    throw std::invalid_argument("mean_square_velocity: window exceeds path duration");
  double sum = 0.0;
  size_t count = 0;
  size_t j = 0;
  for (size_t i = 0; i < p.points.size(); ++i) {
    double target = p.times[i] + window;
    if (target > t_end) break;
    while (j + 1 < p.times.size() && p.times[j + 1] < target) ++j;
    size_t hi = std::min(j + 1, p.times.size() - 1);
    double span = p.times[hi] - p.times[j];
    double a = span > 0 ? (target - p.times[j]) / span : 0.0;
    Eigen::VectorXd xt = p.points[j] + a * (p.points[hi] - p.points[j]);
    sum += ((xt - p.points[i]) / window).squaredNorm();
    ++count;
  }
  return count ? sum / double(count) : 0.0;
}

} // namespace kfilter
