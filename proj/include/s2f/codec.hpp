#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "s2f/image.hpp"
#include "s2f/motion.hpp"
#include "s2f/watermark.hpp"

namespace s2f {

inline constexpr std::array<std::uint8_t, 4> kS2fMagic = {'S', '2', 'F', '1'};
inline constexpr std::uint16_t kS2fVersion = 1;
inline constexpr std::size_t kS2fHeaderSize = 24;
inline constexpr int kS2fBlockSize = 4;
inline constexpr int kDefaultGop = 6;
/// Largest vector component the mean-matrix search can emit (4 blocks * 4 px).
inline constexpr int kMaxVectorComponent = 16;

/// Fixed 24-byte little-endian header:
///   magic[4] version:u16 width:u32 height:u32 frame_count:u32
///   block_size:u8 gop_length:u8 wm_width:u16 wm_height:u16
struct S2fHeader {
  std::uint16_t version = kS2fVersion;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t frame_count = 0;
  std::uint8_t block_size = kS2fBlockSize;
  std::uint8_t gop_length = kDefaultGop;
  std::uint16_t wm_width = 0;  // 0/0 when no watermark metadata is carried
  std::uint16_t wm_height = 0;

  std::optional<WatermarkDims> watermark() const {
    if (wm_width == 0 && wm_height == 0) return std::nullopt;
    return WatermarkDims{wm_width, wm_height};
  }

  friend bool operator==(const S2fHeader&, const S2fHeader&) = default;
};

enum class FrameType : std::uint8_t { Intra = 0, Predicted = 1 };

/// I record: the raw frame. P record: one vector per 4x4 block.
struct FrameRecord {
  std::variant<Frame, MotionField> payload;

  FrameType type() const {
    return std::holds_alternative<Frame>(payload) ? FrameType::Intra
                                                  : FrameType::Predicted;
  }
  const Frame& intra() const { return std::get<Frame>(payload); }
  const MotionField& vectors() const { return std::get<MotionField>(payload); }

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct S2fStream {
  S2fHeader header;
  std::vector<FrameRecord> records;

  friend bool operator==(const S2fStream&, const S2fStream&) = default;
};

/// Stream plus the frames the encoder reconstructed while coding it.
struct EncodeResult {
  S2fStream stream;
  std::vector<Frame> reconstruction;
};

inline bool is_intra_index(std::size_t k, unsigned gop_length) {
  return k % gop_length == 0;
}

/// Closed-loop GOP encoder: frame k is an I record when k % gop == 0,
/// otherwise the motion field of frame k against the previous
/// *reconstructed* frame. No residual is stored.
EncodeResult encode_with_reconstruction(
    const VideoSequence& video, int gop_length = kDefaultGop,
    std::optional<WatermarkDims> wm = std::nullopt);

S2fStream encode(const VideoSequence& video, int gop_length = kDefaultGop,
                 std::optional<WatermarkDims> wm = std::nullopt);

VideoSequence decode(const S2fStream& stream);

/// Throws a Format error naming the first violated stream invariant.
void validate(const S2fStream& stream);

std::vector<std::uint8_t> serialize(const S2fStream& stream);
S2fStream parse(std::span<const std::uint8_t> bytes);

/// Serialized byte count of one record (type byte included).
std::size_t record_size(FrameType type, std::uint32_t width,
                        std::uint32_t height);

}  // namespace s2f
