#pragma once

#include <cstdint>
#include <stdexcept>

#include "kfilter/polyline.hpp"
#include "kfilter/rng.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

// Fluctuation operator E: either token substitution on words or coordinate
// jitter on paths. Deterministic given (input, spec).
struct NoiseSpec {
  enum class Model { TokenSubstitution, CoordinateJitter };
  Model model = Model::TokenSubstitution;
  double amplitude = 0.0; // substitution probability, or jitter stddev
  uint64_t seed = 0;

  void validate() const {
    if (model == Model::TokenSubstitution && (amplitude < 0.0 || amplitude > 1.0))
      throw std::invalid_argument("NoiseSpec: substitution probability must be in [0,1]");
    if (amplitude < 0.0)
      throw std::invalid_argument("NoiseSpec: amplitude must be non-negative");
  }
};

// Each token is independently replaced by a uniformly random *other* token
// with probability ns.amplitude.
inline Word apply_E_word(const Word& w, const Alphabet& a, const NoiseSpec& ns) {
  ns.validate();
  if (ns.model != NoiseSpec::Model::TokenSubstitution)
    throw std::invalid_argument("apply_E_word: needs token_substitution model");
  check_word(w, a);
  if (a.size() < 2 && ns.amplitude > 0 && !w.empty())
    throw std::invalid_argument("apply_E_word: no substitute tokens in a 1-token alphabet");
  Rng rng(ns.seed);
  Word out = w;
  for (auto& t : out.tokens) {
    if (rng.uniform() < ns.amplitude) {
      uint64_t r = rng.below(a.size() - 1);
      if (r >= t) ++r; // skip the original token
      t = uint16_t(r);
    }
  }
  return out;
}

// Independent zero-mean Gaussian jitter on every coordinate. The closed flag
// is preserved; the two endpoints jitter independently.
inline Polyline apply_E_path(const Polyline& p, const NoiseSpec& ns) {
  ns.validate();
  if (ns.model != NoiseSpec::Model::CoordinateJitter)
    throw std::invalid_argument("apply_E_path: needs coordinate_jitter model");
  p.validate();
  Rng rng(ns.seed);
  Polyline out = p;
  for (auto& pt : out.points)
    for (Eigen::Index i = 0; i < pt.size(); ++i) pt[i] += ns.amplitude * rng.gaussian();
  return out;
}

} // namespace kfilter
