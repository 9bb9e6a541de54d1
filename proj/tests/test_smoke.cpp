#include <catch2/catch_amalgamated.hpp>

#include "kfilter/bits.hpp"
#include "kfilter/brownian.hpp"
#include "kfilter/bspline.hpp"
#include "kfilter/complexity.hpp"
#include "kfilter/filters.hpp"
#include "kfilter/g2.hpp"
#include "kfilter/harmonics.hpp"
#include "kfilter/io.hpp"
#include "kfilter/noise.hpp"
#include "kfilter/octonion.hpp"
#include "kfilter/polyline.hpp"
#include "kfilter/quantize.hpp"
#include "kfilter/robot.hpp"
#include "kfilter/rng.hpp"
#include "kfilter/version.hpp"
#include "kfilter/word.hpp"

using namespace kfilter;

TEST_CASE("every module is usable end to end") {
  Alphabet a = build_so3_alphabet(0.1);
  Word w = make_word({0, 0, 1}, a);
  CHECK(estimate_word(w, a, Estimator::Lz78).bits > 0);
  CHECK(oct_table().is_alternative());
  CHECK(gauss_legendre(8).first.size() == 8);
}
