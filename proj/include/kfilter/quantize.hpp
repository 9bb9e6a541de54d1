#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kfilter/polyline.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

// Rotation-generator alphabet {Rx, Ry, Rz} and inverses at step angle theta.
inline Alphabet build_so3_alphabet(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw std::invalid_argument("build_so3_alphabet: theta must be in (0, pi)");
  std::vector<Token> tokens = {
      {0, 3, "Rx"}, {1, 4, "Ry"}, {2, 5, "Rz"},
      {3, 0, "Rx'"}, {4, 1, "Ry'"}, {5, 2, "Rz'"},
  };
  Alphabet a("so3", std::move(tokens));
  double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix3d rx, ry, rz;
  rx << 1, 0, 0,
        0, c, -s,
        0, s, c;
  ry << c, 0, s,
        0, 1, 0,
        -s, 0, c;
  rz << c, -s, 0,
        s, c, 0,
        0, 0, 1;
  a.set_realization(0, rx);
  a.set_realization(1, ry);
  a.set_realization(2, rz);
  a.set_realization(3, rx.transpose());
  a.set_realization(4, ry.transpose());
  a.set_realization(5, rz.transpose());
  a.validate();
  return a;
}

struct Quantizer {
  Alphabet alphabet;
  Eigen::MatrixXd seed_state; // initial frame
  Eigen::VectorXd anchor;     // point the frame acts on
  double step_angle = 0;      // generator step; 2*step_angle is the loop-closure tolerance
  int max_burst = 8;          // cap on tokens emitted per sample step

  void validate() const {
    if (!alphabet.has_realization())
      throw std::runtime_error("Quantizer: alphabet has no realization");
    if (seed_state.rows() != alphabet.dim() || seed_state.cols() != alphabet.dim())
      throw std::invalid_argument("Quantizer: seed_state dimension mismatch");
    if (anchor.size() != alphabet.dim())
      throw std::invalid_argument("Quantizer: anchor dimension mismatch");
    Eigen::MatrixXd g = seed_state.transpose() * seed_state;
    if ((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("Quantizer: seed_state must be orthogonal");
  }
};

inline Quantizer make_quantizer(Alphabet a, Eigen::VectorXd anchor, double step_angle) {
  Quantizer q;
  int d = a.dim();
  q.alphabet = std::move(a);
  q.seed_state = Eigen::MatrixXd::Identity(d, d);
  q.anchor = std::move(anchor);
  q.step_angle = step_angle;
  q.validate();
  return q;
}

// Inverse of the quantization map: point k is the k-token prefix product
// applied to the anchor, |w|+1 points in all.
inline Polyline reconstruct(const Word& w, const Quantizer& q) {
  check_word(w, q.alphabet);
  Polyline p;
  p.points.reserve(w.tokens.size() + 1);
  Eigen::MatrixXd frame = q.seed_state;
  p.points.push_back(frame * q.anchor);
  for (uint16_t t : w.tokens) {
    frame *= q.alphabet.matrix(t);
    p.points.push_back(frame * q.anchor);
  }
  double tol = q.step_angle > 0 ? 2.0 * q.step_angle : 1e-9;
  p.closed = (p.points.back() - p.points.front()).norm() <= tol;
  return p;
}

// Greedy quantization: resample to n+1 targets by arc length, then at each
// target append the token whose action moves the anchor image closest to it,
// continuing while the distance strictly improves (at most max_burst tokens).
inline Word quantize_path(const Polyline& p, const Quantizer& q, size_t n) {
  p.validate();
  q.validate();
  if (n < 1) throw std::invalid_argument("quantize_path: n must be >= 1");
  if (p.dim() != q.alphabet.dim())
    throw std::invalid_argument("quantize_path: polyline/alphabet dimension mismatch");
  Word w{{}, q.alphabet.name()};
  if (p.points.size() < 2 || p.arc_length() == 0.0) return w;

  Polyline targets = resample_by_arclength(p, n + 1);
  Eigen::MatrixXd frame = q.seed_state;
  size_t ntok = q.alphabet.size();
  for (size_t k = 1; k <= n; ++k) {
    const Eigen::VectorXd& target = targets.points[k];
    for (int burst = 0; burst < q.max_burst; ++burst) {
      double cur = (frame * q.anchor - target).norm();
      int best = -1;
      double best_dist = cur;
      for (size_t t = 0; t < ntok; ++t) {
        double d = (frame * q.alphabet.matrix(uint16_t(t)) * q.anchor - target).norm();
        if (d < best_dist) {
          best_dist = d;
          best = int(t);
        }
      }
      if (best < 0) {
        if (burst == 0) {
          // forced step: take the least-bad token so every sample emits
          best = 0;
          best_dist = (frame * q.alphabet.matrix(0) * q.anchor - target).norm();
          for (size_t t = 1; t < ntok; ++t) {
            double d = (frame * q.alphabet.matrix(uint16_t(t)) * q.anchor - target).norm();
            if (d < best_dist) {
              best_dist = d;
              best = int(t);
            }
          }
        } else {
          break;
        }
      }
      frame *= q.alphabet.matrix(uint16_t(best));
      w.tokens.push_back(uint16_t(best));
    }
  }
  return w;
}

} // namespace kfilter
