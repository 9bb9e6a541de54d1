#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kfilter/complexity.hpp"
#include "kfilter/polyline.hpp"
#include "kfilter/quantize.hpp"

namespace kfilter {

// Clamped (open) or periodic (closed) B-spline. For closed curves the last
// `degree` control points duplicate the first `degree`, so plain de Boor
// evaluation works on both and knot count = control count + degree + 1
// always holds.
struct BSplineCurve {
  int degree = 4;
  std::vector<double> knots;
  std::vector<Eigen::VectorXd> control_points;
  bool closed = false;

  int dim() const { return control_points.empty() ? 0 : int(control_points.front().size()); }
  double u_min() const { return knots[size_t(degree)]; }
  double u_max() const { return knots[control_points.size()]; }

  void validate() const {
    if (degree < 1) throw std::invalid_argument("BSplineCurve: degree must be >= 1");
    if (knots.size() != control_points.size() + size_t(degree) + 1)
      throw std::invalid_argument("BSplineCurve: knot count != control count + degree + 1");
    for (size_t i = 1; i < knots.size(); ++i)
      if (knots[i] < knots[i - 1])
        throw std::invalid_argument("BSplineCurve: knots must be non-decreasing");
    if (control_points.size() < size_t(degree) + 1)
      throw std::invalid_argument("BSplineCurve: needs at least degree+1 control points");
  }

  size_t find_span(double u) const {
    size_t n = control_points.size();
    if (u >= u_max()) return n - 1;
    if (u <= u_min()) return size_t(degree);
    auto it = std::upper_bound(knots.begin(), knots.end(), u);
    return size_t(it - knots.begin()) - 1;
  }

  // de Boor recursion on the nonzero control window.
  Eigen::VectorXd eval(double u) const {
    size_t k = find_span(u);
    std::vector<Eigen::VectorXd> d(size_t(degree) + 1);
    for (int j = 0; j <= degree; ++j)
      d[size_t(j)] = control_points[k - size_t(degree) + size_t(j)];
    for (int r = 1; r <= degree; ++r)
      for (int j = degree; j >= r; --j) {
        size_t i = k - size_t(degree) + size_t(j);
        double den = knots[i + size_t(degree) - size_t(r) + 1] - knots[i];
        double alpha = den > 0 ? (u - knots[i]) / den : 0.0;
        d[size_t(j)] = (1.0 - alpha) * d[size_t(j) - 1] + alpha * d[size_t(j)];
      }
    return d[size_t(degree)];
  }

  // All degree+1 basis values that are nonzero at u, for the span's window.
  void basis_at(double u, size_t* span_out, std::vector<double>& N) const {
    size_t span = find_span(u);
    N.assign(size_t(degree) + 1, 0.0);
    std::vector<double> left(size_t(degree) + 1), right(size_t(degree) + 1);
    N[0] = 1.0;
    for (int j = 1; j <= degree; ++j) {
      left[size_t(j)] = u - knots[span + 1 - size_t(j)];
      right[size_t(j)] = knots[span + size_t(j)] - u;
      double saved = 0.0;
      for (int r = 0; r < j; ++r) {
        double den = right[size_t(r) + 1] + left[size_t(j) - size_t(r)];
        double tmp = den > 0 ? N[size_t(r)] / den : 0.0;
        N[size_t(r)] = saved + right[size_t(r) + 1] * tmp;
        saved = left[size_t(j) - size_t(r)] * tmp;
      }
      N[size_t(j)] = saved;
    }
    *span_out = span;
  }
};

namespace detail {

inline std::vector<double> clamped_knots(size_t n_ctrl, int degree) {
  std::vector<double> knots(n_ctrl + size_t(degree) + 1);
  size_t spans = n_ctrl - size_t(degree);
  for (size_t i = 0; i < knots.size(); ++i) {
    if (i <= size_t(degree)) knots[i] = 0.0;
    else if (i >= n_ctrl) knots[i] = 1.0;
    else knots[i] = double(i - size_t(degree)) / double(spans);
  }
  return knots;
}

inline std::vector<double> periodic_knots(size_t n_distinct, int degree) {
  size_t total = n_distinct + 2 * size_t(degree) + 1;
  std::vector<double> knots(total);
  for (size_t j = 0; j < total; ++j)
    knots[j] = (double(j) - double(degree)) / double(n_distinct);
  return knots;
}

// Chord-length parameters in [0,1]; closed inputs use the full cycle length
// including the wrap-back segment.
inline std::vector<double> chord_params(const Polyline& p) {
  std::vector<double> u(p.points.size(), 0.0);
  double total = 0.0;
  for (size_t i = 1; i < p.points.size(); ++i) {
    total += (p.points[i] - p.points[i - 1]).norm();
    u[i] = total;
  }
  double cycle = total;
  if (p.closed) cycle += (p.points.front() - p.points.back()).norm();
  if (cycle <= 0.0) throw std::invalid_argument("fit_bspline: degenerate (coincident) input");
  for (double& v : u) v /= cycle;
  return u;
}

} // namespace detail

// Least-squares fit with chord-length parameterization. Open inputs get a
// clamped uniform curve, closed inputs a periodic one whose control points
// wrap.
inline BSplineCurve fit_bspline(const Polyline& p, int degree, size_t n_ctrl) {
  p.validate();
  if (degree < 4) throw std::invalid_argument("fit_bspline: degree must be >= 4");
  if (n_ctrl < size_t(degree) + 1)
    throw std::invalid_argument("fit_bspline: n_ctrl must be >= degree + 1");
  if (p.points.size() < n_ctrl)
    throw std::invalid_argument("fit_bspline: under-determined (fewer points than controls)");

  BSplineCurve c;
  c.degree = degree;
  c.closed = p.closed;
  size_t n_free = n_ctrl;
  if (p.closed) {
    c.knots = detail::periodic_knots(n_ctrl, degree);
  } else {
    c.knots = detail::clamped_knots(n_ctrl, degree);
  }
  // temporary full-length control list so basis_at can walk the knots
  size_t n_total = p.closed ? n_ctrl + size_t(degree) : n_ctrl;
  c.control_points.assign(n_total, Eigen::VectorXd::Zero(p.dim()));

  std::vector<double> params = detail::chord_params(p);
  size_t m = p.points.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(Eigen::Index(m), Eigen::Index(n_free));
  Eigen::MatrixXd B(Eigen::Index(m), p.dim());
  std::vector<double> N;
  for (size_t r = 0; r < m; ++r) {
    size_t span = 0;
    c.basis_at(params[r], &span, N);
    for (int j = 0; j <= degree; ++j) {
      size_t col = span - size_t(degree) + size_t(j);
      if (p.closed) col %= n_ctrl; // periodic wrap folds onto distinct controls
      A(Eigen::Index(r), Eigen::Index(col)) += N[size_t(j)];
    }
    B.row(Eigen::Index(r)) = p.points[r].transpose();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < Eigen::Index(n_free))
    throw std::invalid_argument("fit_bspline: under-determined (rank-deficient system)");
  Eigen::MatrixXd X = qr.solve(B);

  for (size_t i = 0; i < n_total; ++i)
    c.control_points[i] = X.row(Eigen::Index(i % n_ctrl)).transpose();
  c.validate();
  return c;
}

// m samples along the curve; closed curves omit the duplicate endpoint so
// the result is a loop in the polyline sense.
inline Polyline sample_curve(const BSplineCurve& c, size_t m) {
  c.validate();
  if (m < 2) throw std::invalid_argument("sample_curve: need at least 2 samples");
  Polyline p;
  p.closed = c.closed;
  p.points.reserve(m);
  p.times.reserve(m);
  double lo = c.u_min(), hi = c.u_max();
  for (size_t k = 0; k < m; ++k) {
    double u = c.closed ? lo + (hi - lo) * double(k) / double(m)
                        : lo + (hi - lo) * double(k) / double(m - 1);
    p.points.push_back(c.eval(u));
    p.times.push_back(u);
  }
  return p;
}

struct TubeReport {
  double epsilon = 0.0;
  double max_deviation = 0.0;
  bool contained = false;
  double complexity_original_bits = 0.0;
  double complexity_spline_bits = 0.0;
  double ratio = 0.0; // spline / original
};

// One-sided deviation: max over input samples of the distance to the curve,
// found on a dense parameter grid (16x the sample count) and sharpened by
// local ternary search.
inline TubeReport tube_check(const BSplineCurve& c, const Polyline& p, double epsilon) {
  c.validate();
  p.validate();
  size_t dense = std::max<size_t>(p.points.size() * 16, 64);
  double lo = c.u_min(), hi = c.u_max();
  std::vector<Eigen::VectorXd> grid(dense + 1);
  for (size_t j = 0; j <= dense; ++j)
    grid[j] = c.eval(lo + (hi - lo) * double(j) / double(dense));

  double worst = 0.0;
  for (const auto& pt : p.points) {
    size_t best_j = 0;
    double best = (grid[0] - pt).norm();
    for (size_t j = 1; j <= dense; ++j) {
      double d = (grid[j] - pt).norm();
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    double a = lo + (hi - lo) * double(best_j > 0 ? best_j - 1 : 0) / double(dense);
    double b = lo + (hi - lo) * double(std::min(best_j + 1, dense)) / double(dense);
    for (int it = 0; it < 40; ++it) {
      double u1 = a + (b - a) / 3.0, u2 = b - (b - a) / 3.0;
      if ((c.eval(u1) - pt).norm() < (c.eval(u2) - pt).norm()) b = u2;
      else a = u1;
    }
    best = std::min(best, (c.eval(0.5 * (a + b)) - pt).norm());
    worst = std::max(worst, best);
  }
  TubeReport r;
  r.epsilon = epsilon;
  r.max_deviation = worst;
  r.contained = worst <= epsilon;
  return r;
}

// Quantize the original and an equal-size sampling of the spline with the
// same quantizer; the ratio of the two estimates is the complexity saving.
inline TubeReport complexity_reduction(const Polyline& original, const BSplineCurve& c,
                                       const Quantizer& q, Estimator e) {
  original.validate();
  if (original.points.size() < 2)
    throw std::invalid_argument("complexity_reduction: need at least 2 points");
  size_t n = original.points.size() - 1;
  Word w_orig = quantize_path(original, q, n);
  Polyline sampled = sample_curve(c, original.points.size());
  Word w_spline = quantize_path(sampled, q, n);
  TubeReport r;
  r.complexity_original_bits = estimate_word(w_orig, q.alphabet, e).bits;
  r.complexity_spline_bits = estimate_word(w_spline, q.alphabet, e).bits;
  r.ratio = r.complexity_original_bits > 0
                ? r.complexity_spline_bits / r.complexity_original_bits
                : 0.0;
  return r;
}

} // namespace kfilter
