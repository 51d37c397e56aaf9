#include "s2f/image.hpp"

#include <string>

#include "s2f/error.hpp"

namespace s2f {

namespace {

void require_positive(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::Dimension, "image dimensions must be positive, got " +
                                          std::to_string(width) + "x" +
                                          std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  require_positive(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require_positive(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::Dimension,
                "pixel count " + std::to_string(pixels_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

void require_frame_dims(int width, int height) {
  if (width <= 0 || height <= 0 || width % Frame::kFrameAlign != 0 ||
      height % Frame::kFrameAlign != 0) {
    throw Error(ErrorKind::Dimension,
                "frame dimensions must be positive multiples of 8, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

Frame::Frame(int width, int height, std::uint8_t fill)
    : Image((require_frame_dims(width, height), width), height, fill) {}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels)
    : Image((require_frame_dims(width, height), width), height,
            std::move(pixels)) {}

Frame::Frame(Image image) : Image(std::move(image)) {
  require_frame_dims(width(), height());
}

void VideoSequence::validate() const {
  if (frames.empty()) {
    throw Error(ErrorKind::Argument, "video sequence has no frames");
  }
  const Frame& first = frames.front();
  for (std::size_t k = 1; k < frames.size(); ++k) {
    if (!frames[k].same_size(first)) {
      throw Error(ErrorKind::Dimension,
                  "frame " + std::to_string(k) + " is " +
                      std::to_string(frames[k].width()) + "x" +
                      std::to_string(frames[k].height()) + ", expected " +
                      std::to_string(first.width()) + "x" +
                      std::to_string(first.height()));
    }
  }
}

}  // namespace s2f
