#include "s2f/synthetic.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "s2f/error.hpp"

namespace s2f {

namespace {

constexpr int kBlock = 4;
constexpr int kBlockPixels = kBlock * kBlock;

// Portable bounded draw from raw engine output; std distributions are not
// reproducible across standard libraries.
std::uint32_t draw_below(std::mt19937_64& rng, std::uint32_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<std::uint32_t>(v % bound);
}

// Random 16 pixels with an exact target sum in [0, 4080].
void fill_block(std::mt19937_64& rng, int target, std::uint8_t* out) {
  int values[kBlockPixels];
  int sum = 0;
  for (int& v : values) {
    v = static_cast<int>(draw_below(rng, 256));
    sum += v;
  }
  while (sum != target) {
    int& v = values[draw_below(rng, kBlockPixels)];
    if (sum < target) {
      const int step = std::min(target - sum, 255 - v);
      v += step;
      sum += step;
    } else {
      const int step = std::min(sum - target, v);
      v -= step;
      sum -= step;
    }
  }
  for (int i = 0; i < kBlockPixels; ++i) {
    out[i] = static_cast<std::uint8_t>(values[i]);
  }
}

}  // namespace

Frame synthetic_texture(int width, int height, std::uint64_t seed) {
  require_frame_dims(width, height);
  std::mt19937_64 rng(seed);

  const int cols = width / kBlock;
  const int rows = height / kBlock;
  const int blocks = cols * rows;

  // Each block gets its own pixel sum; sums are drawn without replacement
  // from 0..4080, refilling the pool once it is exhausted.
  std::vector<int> sums;
  sums.reserve(blocks);
  std::vector<int> pool(kDistinctBlockMeans);
  while (static_cast<int>(sums.size()) < blocks) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = kDistinctBlockMeans - 1; i > 0; --i) {
      std::swap(pool[i], pool[draw_below(rng, static_cast<std::uint32_t>(i + 1))]);
    }
    const int take = std::min<int>(kDistinctBlockMeans,
                                   blocks - static_cast<int>(sums.size()));
    sums.insert(sums.end(), pool.begin(), pool.begin() + take);
  }

  Frame frame(width, height);
  std::uint8_t block[kBlockPixels];
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      fill_block(rng, sums[r * cols + c], block);
      for (int y = 0; y < kBlock; ++y) {
        for (int x = 0; x < kBlock; ++x) {
          frame.at(c * kBlock + x, r * kBlock + y) = block[y * kBlock + x];
        }
      }
    }
  }
  return frame;
}

Frame shift_wrapped(const Frame& frame, int dx, int dy) {
  const int w = frame.width();
  const int h = frame.height();
  const int ox = ((dx % w) + w) % w;
  const int oy = ((dy % h) + h) % h;
  Frame out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = (y + oy) % h;
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = frame.at((x + ox) % w, sy);
    }
  }
  return out;
}

VideoSequence gen_synthetic(const SyntheticSpec& spec) {
  require_frame_dims(spec.width, spec.height);
  if (spec.frame_count < 1) {
    throw Error(ErrorKind::Argument, "frame count must be at least 1");
  }
  if (std::abs(spec.dx) > kMaxSyntheticStep ||
      std::abs(spec.dy) > kMaxSyntheticStep) {
    throw Error(ErrorKind::Argument,
                "per-frame displacement (" + std::to_string(spec.dx) + "," +
                    std::to_string(spec.dy) + ") exceeds +/-" +
                    std::to_string(kMaxSyntheticStep));
  }
  VideoSequence video;
  video.frames.reserve(spec.frame_count);
  video.frames.push_back(synthetic_texture(spec.width, spec.height, spec.seed));
  for (int k = 1; k < spec.frame_count; ++k) {
    video.frames.push_back(shift_wrapped(video.frames.back(), spec.dx, spec.dy));
  }
  return video;
}

}  // namespace s2f
