#pragma once

#include <array>
#include <cstddef>

#include "syssamp/synthetic.hpp"
#include "syssamp/theory.hpp"

namespace syssamp {

// Published summary of the forest-strip data of Murthy (1967): timber volume
// (y) against strip length (x) for 176 strips, arranged by length and sampled
// systematically with n = 16. The intraclass correlations are not part of the
// published summary; callers set them.

inline constexpr std::size_t kMurthyN = 176;
inline constexpr std::size_t kMurthyN_sample = 16;

/// Moments of the forest-strip data with rho_y = rho_x = `intraclass` and
/// S_y2^2 = 0.75 S_y^2.
SamplingContext murthy_context(double intraclass, double w2 = 0.0, double ell = 1.0);

/// Published PRE grid for w2 in {0.1, 0.2, 0.3, 0.4} x L in {2.0, 2.5, 3.0, 3.5}
/// (w2 major). The printed first L of every block reads 2.5; 2.0 is meant.
inline constexpr std::array<PreCell, 16> kMurthyPreTable{{
    {0.1, 2.0, 407.48}, {0.1, 2.5, 404.18}, {0.1, 3.0, 400.94}, {0.1, 3.5, 397.77},
    {0.2, 2.0, 400.94}, {0.2, 2.5, 394.67}, {0.2, 3.0, 388.66}, {0.2, 3.5, 382.89},
    {0.3, 2.0, 394.67}, {0.3, 2.5, 385.74}, {0.3, 3.0, 377.34}, {0.3, 3.5, 369.42},
    {0.4, 2.0, 403.22}, {0.4, 2.5, 377.34}, {0.4, 3.0, 366.88}, {0.4, 3.5, 357.17},
}};

/// Index of the printed cell (w2 = 0.4, L = 2.0) that disagrees with the PRE
/// formula; its recomputed value is about 388.66.
inline constexpr std::size_t kMurthyMisprintCell = 12;

/// Synthetic stand-in with the published means, mean squares and correlation,
/// sorted by x. Its intraclass correlations are whatever the draw gives.
LinearPopulationSpec murthy_standin_spec(std::uint64_t seed = 1967);

}  // namespace syssamp
