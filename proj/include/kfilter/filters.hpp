#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfilter/complexity.hpp"
#include "kfilter/quantize.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

enum class VerdictKind { Causal, Reversible, Spin, NoSpin };

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Causal: return "Causal";
    case VerdictKind::Reversible: return "Reversible";
    case VerdictKind::Spin: return "Spin";
    case VerdictKind::NoSpin: return "NoSpin";
  }
  return "?";
}

// rho quantifies "far less": memory m is negligible once the estimate
// reaches rho * m.
struct FilterConfig {
  Estimator estimator = Estimator::Lz78;
  double rho = 4.0;
  double memory_bits = 0.0;

  void validate() const {
    if (!(rho > 1.0)) throw std::invalid_argument("FilterConfig: rho must be > 1");
    if (memory_bits < 0.0)
      throw std::invalid_argument("FilterConfig: memory_bits must be >= 0");
  }
};

struct FilterVerdict {
  VerdictKind kind = VerdictKind::Reversible;
  double estimate_bits = 0.0;
  double memory_bits = 0.0;
  double ratio = 0.0; // estimate / memory; +inf when memory is 0
  bool marginal = false;
};

// Causal when the fluctuated word's estimate dwarfs the memory budget,
// Reversible when memory covers it; the band in between is flagged marginal
// and resolved Reversible. The caller supplies the E-image so the decision
// stays deterministic.
inline FilterVerdict classify_path(const Word& w, const Word& e_image, const Alphabet& a,
                                   const FilterConfig& cfg) {
  cfg.validate();
  check_word(w, a);
  check_word(e_image, a);
  FilterVerdict v;
  v.estimate_bits = estimate_word(e_image, a, cfg.estimator).bits;
  v.memory_bits = cfg.memory_bits;
  v.ratio = cfg.memory_bits > 0 ? v.estimate_bits / cfg.memory_bits
                                : std::numeric_limits<double>::infinity();
  if (v.estimate_bits >= cfg.rho * cfg.memory_bits) {
    v.kind = VerdictKind::Causal;
  } else if (v.estimate_bits <= cfg.memory_bits) {
    v.kind = VerdictKind::Reversible;
  } else {
    v.kind = VerdictKind::Reversible;
    v.marginal = true;
  }
  return v;
}

// The causal rule restricted to loops: Spin iff the loop cannot be run
// backwards within memory. The clean word must reconstruct to a closed
// polyline; the E-image need not close.
inline FilterVerdict classify_loop(const Word& lw, const Word& e_image, const Alphabet& a,
                                   const Quantizer& q, const FilterConfig& cfg) {
  Polyline rec = reconstruct(lw, q);
  if (!rec.closed)
    throw std::invalid_argument("classify_loop: word does not reconstruct to a closed loop");
  FilterVerdict v = classify_path(lw, e_image, a, cfg);
  v.kind = v.kind == VerdictKind::Causal ? VerdictKind::Spin : VerdictKind::NoSpin;
  return v;
}

inline std::vector<Word> highpass(const std::vector<Word>& words, const Alphabet& a,
                                  double threshold_bits, Estimator e) {
  std::vector<Word> out;
  for (const auto& w : words)
    if (estimate_word(w, a, e).bits >= threshold_bits) out.push_back(w);
  return out;
}

inline std::vector<Word> lowpass(const std::vector<Word>& words, const Alphabet& a,
                                 double threshold_bits, Estimator e) {
  std::vector<Word> out;
  for (const auto& w : words)
    if (estimate_word(w, a, e).bits < threshold_bits) out.push_back(w);
  return out;
}

// Mirror regime: both the word and its reversed-inverse fit in memory.
struct MirrorReport {
  double forward_bits = 0.0;
  double reverse_bits = 0.0;
  double gap = 0.0;
  double memory_bits = 0.0;
  bool symmetric = false;
};

inline MirrorReport mirror_report(const Word& w, const Alphabet& a, const FilterConfig& cfg) {
  cfg.validate();
  Word rev = reverse_inverse(w, a); // throws if a token has no inverse
  MirrorReport r;
  r.forward_bits = estimate_word(w, a, cfg.estimator).bits;
  r.reverse_bits = estimate_word(rev, a, cfg.estimator).bits;
  r.gap = std::abs(r.forward_bits - r.reverse_bits);
  r.memory_bits = cfg.memory_bits;
  r.symmetric = r.forward_bits <= cfg.memory_bits && r.reverse_bits <= cfg.memory_bits;
  return r;
}

} // namespace kfilter
