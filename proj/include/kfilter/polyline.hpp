#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace kfilter {

// Time-ordered point samples in R^d. `times` may be empty (no time stamps).
struct Polyline {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> times;
  bool closed = false;

  size_t size() const { return points.size(); }
  int dim() const { return points.empty() ? 0 : int(points.front().size()); }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("Polyline: needs at least one point");
    for (const auto& p : points)
      if (p.size() != points.front().size())
        throw std::invalid_argument("Polyline: inconsistent point dimensions");
    if (!times.empty()) {
      if (times.size() != points.size())
        throw std::invalid_argument("Polyline: times/points count mismatch");
      for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
          throw std::invalid_argument("Polyline: times must be strictly increasing");
    }
  }

  double arc_length() const {
    double s = 0;
    for (size_t i = 1; i < points.size(); ++i) s += (points[i] - points[i - 1]).norm();
    return s;
  }
};

// Uniform arc-length resampling to exactly `n` points (endpoints kept).
// Degenerate inputs (single point, zero length) replicate the start.
inline Polyline resample_by_arclength(const Polyline& p, size_t n) {
  p.validate();
  if (n == 0) throw std::invalid_argument("resample: n must be >= 1");
  Polyline out;
  out.closed = p.closed;
  if (p.points.size() == 1 || n == 1) {
    out.points.assign(n, p.points.front());
    return out;
  }
  std::vector<double> cum(p.points.size(), 0.0);
  for (size_t i = 1; i < p.points.size(); ++i)
    cum[i] = cum[i - 1] + (p.points[i] - p.points[i - 1]).norm();
  double total = cum.back();
  if (total == 0.0) {
    out.points.assign(n, p.points.front());
    return out;
  }
  out.points.reserve(n);
  size_t seg = 0;
  for (size_t k = 0; k < n; ++k) {
    double s = total * double(k) / double(n - 1);
    while (seg + 1 < cum.size() && cum[seg + 1] < s) ++seg;
    size_t j = std::min(seg + 1, p.points.size() - 1);
    double span = cum[j] - cum[seg];
    double t = span > 0 ? (s - cum[seg]) / span : 0.0;
    out.points.push_back(p.points[seg] + t * (p.points[j] - p.points[seg]));
  }
  return out;
}

} // namespace kfilter
