#include "s2f/watermark.hpp"

#include <string>
#include <vector>

#include "s2f/error.hpp"

namespace s2f {

namespace {

constexpr int kBlock = EmbedLayout::kCoverBlock;

void require_fits(std::size_t pairs, int width, int height) {
  const std::size_t cap = capacity(width, height);
  if (pairs > cap) {
    throw Error(ErrorKind::Capacity,
                "watermark needs " + std::to_string(pairs) +
                    " carrier pairs but a " + std::to_string(width) + "x" +
                    std::to_string(height) + " frame holds " +
                    std::to_string(cap));
  }
}

// Pixel origin of carrier pair k.
struct Origin {
  int x;
  int y;
};

Origin carrier_origin(std::size_t k, int frame_width) {
  const std::size_t blocks_per_row = frame_width / kBlock;
  return {static_cast<int>(k % blocks_per_row) * kBlock,
          static_cast<int>(k / blocks_per_row) * kBlock};
}

}  // namespace

BinaryWatermark::BinaryWatermark(Image image) : image_(std::move(image)) {
  for (std::uint8_t v : image_.pixels()) {
    if (v != kOn && v != kOff) {
      throw Error(ErrorKind::Format,
                  "watermark pixel value " + std::to_string(v) +
                      " is not 0 or 255");
    }
  }
}

BinaryWatermark binarize(const Image& image, std::uint8_t threshold) {
  std::vector<std::uint8_t> out(image.size());
  auto in = image.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = in[i] >= threshold ? BinaryWatermark::kOn : BinaryWatermark::kOff;
  }
  return BinaryWatermark(Image(image.width(), image.height(), std::move(out)));
}

std::size_t capacity(int frame_width, int frame_height) {
  require_frame_dims(frame_width, frame_height);
  return static_cast<std::size_t>(frame_width / kBlock) *
         static_cast<std::size_t>(frame_height / kBlock);
}

std::size_t pairs_needed(int wm_width, int wm_height) {
  if (wm_width <= 0 || wm_height <= 0) {
    throw Error(ErrorKind::Argument, "watermark dimensions must be positive");
  }
  const std::size_t n = static_cast<std::size_t>(wm_width) * wm_height;
  return (n + 1) / 2;
}

Frame embed(const Frame& cover, const BinaryWatermark& wm) {
  const std::size_t pairs = pairs_needed(wm.width(), wm.height());
  require_fits(pairs, cover.width(), cover.height());

  Frame out = cover;
  auto bits = wm.image().pixels();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Origin o = carrier_origin(k, cover.width());
    for (int j = 0; j < EmbedLayout::kPairWidth; ++j) {
      const std::size_t i = 2 * k + j;
      // The trailing pad of an odd-length watermark is a 0 pixel.
      const bool on = i < bits.size() && bits[i] == BinaryWatermark::kOn;
      out.at(o.x + j, o.y) =
          on ? EmbedLayout::kMappedHigh : EmbedLayout::kMappedLow;
    }
  }
  return out;
}

BinaryWatermark extract(const Image& stego, int wm_width, int wm_height) {
  const std::size_t pairs = pairs_needed(wm_width, wm_height);
  require_fits(pairs, stego.width(), stego.height());

  const std::size_t n = static_cast<std::size_t>(wm_width) * wm_height;
  std::vector<std::uint8_t> bits(n);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Origin o = carrier_origin(k, stego.width());
    for (int j = 0; j < EmbedLayout::kPairWidth; ++j) {
      const std::size_t i = 2 * k + j;
      if (i >= n) break;
      bits[i] = stego.at(o.x + j, o.y) >= EmbedLayout::kThreshold
                    ? BinaryWatermark::kOn
                    : BinaryWatermark::kOff;
    }
  }
  return BinaryWatermark(Image(wm_width, wm_height, std::move(bits)));
}

}  // namespace s2f
