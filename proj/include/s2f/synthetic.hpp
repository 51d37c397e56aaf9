#pragma once

#include <cstdint>

#include "s2f/image.hpp"

namespace s2f {

struct SyntheticSpec {
  int width = 256;
  int height = 256;
  int frame_count = 20;
  int dx = 0;  // per-frame displacement, pixels, |dx| <= kMaxSyntheticStep
  int dy = 0;
  std::uint64_t seed = 1;
};

inline constexpr int kMaxSyntheticStep = 16;

/// Number of distinct 4x4 block means an 8-bit frame can have (sums 0..4080).
inline constexpr int kDistinctBlockMeans = 16 * 255 + 1;

/// Seeded texture whose 4x4-block means are pairwise distinct (when the frame
/// has at most kDistinctBlockMeans blocks; beyond that each mean value is
/// reused as evenly as possible).
Frame synthetic_texture(int width, int height, std::uint64_t seed);

/// Frame k samples frame 0 at ((x + k*dx) mod W, (y + k*dy) mod H). With the
/// vector convention used by the motion module (reference origin = current
/// origin + vector) the true motion of frame k+1 against frame k is (dx, dy).
VideoSequence gen_synthetic(const SyntheticSpec& spec);

/// Cyclic shift with the same sampling rule as gen_synthetic.
Frame shift_wrapped(const Frame& frame, int dx, int dy);

}  // namespace s2f
