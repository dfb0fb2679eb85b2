#pragma once

// Seeded dataset generators for tests, benchmarks and offline demos.

#include <cstddef>
#include <cstdint>
#include <string>

#include "hhomlp/data.hpp"

namespace hhomlp::synthetic {

// KDD Cup 99 style connection records (41 features + label, no header) with
// the KDD training-set class mix: roughly 19.7% normal, 79.2% DOS and the
// remainder probe, R2L and U2R. Per-family feature profiles follow the
// well-known signatures (smurf ICMP floods, neptune SYN floods, port sweeps,
// password guessing, ...), with jitter and a share of atypical rows so the
// task is not trivially separable.
std::string kdd_like_csv(std::size_t rows, std::uint64_t seed);

// Two features in [0,1]; label = x0 + x1 > 1, points closer than `margin` to
// the boundary are resampled. Already normalized to [0,1].
data::Dataset linearly_separable(std::size_t rows, std::uint64_t seed,
                                 double margin = 0.05);

// Feature 0 equals the label, features 1..d-1 are uniform noise. Balanced
// labels, normalized to [0,1].
data::Dataset one_informative(std::size_t rows, std::size_t d,
                              std::uint64_t seed);

// Wraps a raw [0,1]-valued dataset with identity statistics fitted on it.
data::Dataset with_unit_norm(data::Dataset dataset);

}  // namespace hhomlp::synthetic
