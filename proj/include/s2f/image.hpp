#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace s2f {

/// 8-bit grayscale plane, row-major, no stride padding. Any positive size.
class Image {
 public:
  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(pixels_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_size(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Video frame: an Image whose sides are multiples of kFrameAlign, so both
/// the 8x8 watermark grid and the 4x4 motion grid tile it exactly.
class Frame : public Image {
 public:
  static constexpr int kFrameAlign = 8;

  Frame() = default;
  Frame(int width, int height, std::uint8_t fill = 0);
  Frame(int width, int height, std::vector<std::uint8_t> pixels);
  explicit Frame(Image image);

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Throws a Dimension error unless width/height are positive multiples of 8.
void require_frame_dims(int width, int height);

struct VideoSequence {
  std::vector<Frame> frames;
  double frame_rate = 5.0;

  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }

  /// Throws unless there is at least one frame and all share one size.
  void validate() const;

  friend bool operator==(const VideoSequence& a, const VideoSequence& b) {
    return a.frames == b.frames;
  }
};

}  // namespace s2f
