#pragma once

namespace kfilter {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever an estimator's bit-level coding scheme changes; reports
// embed this so stored estimates stay comparable.
inline constexpr const char* kEstimatorVersion = "1";

} // namespace kfilter
