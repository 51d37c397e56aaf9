#pragma once

#include <cstdint>

#include "s2f/image.hpp"

namespace s2f {

/// Two-level (0/255) image carried inside video frames.
class BinaryWatermark {
 public:
  static constexpr std::uint8_t kOn = 255;
  static constexpr std::uint8_t kOff = 0;

  BinaryWatermark() = default;
  /// Throws a Format error if any pixel is not 0 or 255.
  explicit BinaryWatermark(Image image);

  int width() const noexcept { return image_.width(); }
  int height() const noexcept { return image_.height(); }
  std::size_t size() const noexcept { return image_.size(); }
  const Image& image() const noexcept { return image_; }

  friend bool operator==(const BinaryWatermark&,
                         const BinaryWatermark&) = default;

 private:
  Image image_;
};

/// Watermark size as carried in stream metadata.
struct WatermarkDims {
  std::uint16_t width = 0;
  std::uint16_t height = 0;

  friend bool operator==(const WatermarkDims&, const WatermarkDims&) = default;
};

/// Carrier layout: one horizontal pixel pair at the top-left of every 8x8
/// cover block, in block raster order.
struct EmbedLayout {
  static constexpr int kCoverBlock = 8;
  static constexpr int kPairWidth = 2;
  static constexpr std::uint8_t kMappedHigh = 20;  // replaces 255
  static constexpr std::uint8_t kMappedLow = 10;   // replaces 0
  static constexpr std::uint8_t kThreshold = 15;   // v >= 15 reads as 255
};

static_assert(EmbedLayout::kMappedLow < EmbedLayout::kThreshold &&
              EmbedLayout::kThreshold < EmbedLayout::kMappedHigh);

/// pixel >= threshold -> 255, else 0.
BinaryWatermark binarize(const Image& image, std::uint8_t threshold = 128);

/// Number of carrier pairs a frame holds: one per 8x8 block.
std::size_t capacity(int frame_width, int frame_height);

/// Pairs needed for a watermark of the given size (odd sizes round up).
std::size_t pairs_needed(int wm_width, int wm_height);

/// Writes watermark pair k into cover block k; all other pixels untouched.
Frame embed(const Frame& cover, const BinaryWatermark& wm);

/// Reads back a wm_width x wm_height watermark with the midpoint classifier.
BinaryWatermark extract(const Image& stego, int wm_width, int wm_height);

}  // namespace s2f
