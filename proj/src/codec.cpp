#include "s2f/codec.hpp"

#include <algorithm>
#include <string>

#include "s2f/error.hpp"
#include "s2f/watermark.hpp"

namespace s2f {

namespace {

[[noreturn]] void format_error(const std::string& what) {
  throw Error(ErrorKind::Format, "s2f: " + what);
}

void require_gop(int gop_length) {
  if (gop_length < 1 || gop_length > 255) {
    throw Error(ErrorKind::Argument,
                "gop length must be in [1, 255], got " +
                    std::to_string(gop_length));
  }
}

bool valid_component(int v) {
  return v % kS2fBlockSize == 0 && v >= -kMaxVectorComponent &&
         v <= kMaxVectorComponent;
}

void validate_header(const S2fHeader& h) {
  if (h.version != kS2fVersion) {
    format_error("unsupported version " + std::to_string(h.version));
  }
  if (h.width == 0 || h.width % Frame::kFrameAlign != 0) {
    format_error("width " + std::to_string(h.width) +
                 " is not a positive multiple of 8");
  }
  if (h.height == 0 || h.height % Frame::kFrameAlign != 0) {
    format_error("height " + std::to_string(h.height) +
                 " is not a positive multiple of 8");
  }
  if (h.width > 65536 || h.height > 65536) {
    format_error("frame size " + std::to_string(h.width) + "x" +
                 std::to_string(h.height) + " exceeds 65536x65536");
  }
  if (h.frame_count == 0) {
    format_error("frame_count must be at least 1");
  }
  if (h.block_size != kS2fBlockSize) {
    format_error("block_size " + std::to_string(h.block_size) +
                 " is not supported (version 1 requires 4)");
  }
  if (h.gop_length == 0) {
    format_error("gop_length must be at least 1");
  }
  if ((h.wm_width == 0) != (h.wm_height == 0)) {
    format_error("wm_width/wm_height must both be zero or both nonzero (" +
                 std::to_string(h.wm_width) + "x" +
                 std::to_string(h.wm_height) + ")");
  }
  if (h.wm_width != 0 &&
      pairs_needed(h.wm_width, h.wm_height) >
          capacity(static_cast<int>(h.width), static_cast<int>(h.height))) {
    format_error("wm_width/wm_height " + std::to_string(h.wm_width) + "x" +
                 std::to_string(h.wm_height) + " exceed frame capacity");
  }
}

void validate_field(const MotionField& field, const S2fHeader& h,
                    std::size_t k) {
  const std::string where = "record " + std::to_string(k) + ": ";
  if (field.block_size != kS2fBlockSize ||
      field.cols != static_cast<int>(h.width) / kS2fBlockSize ||
      field.rows != static_cast<int>(h.height) / kS2fBlockSize ||
      field.vectors.size() !=
          static_cast<std::size_t>(field.rows) * field.cols) {
    format_error(where + "motion field grid does not match the frame");
  }
  for (std::size_t i = 0; i < field.vectors.size(); ++i) {
    const MotionVector& v = field.vectors[i];
    if (!valid_component(v.dx) || !valid_component(v.dy)) {
      format_error(where + "vector " + std::to_string(i) + " (" +
                   std::to_string(v.dx) + "," + std::to_string(v.dy) +
                   ") is not a multiple of 4 within +/-16");
    }
  }
}

// Little-endian byte writer/reader for the fixed layout.
class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> take(std::size_t n, const std::string& what) {
    if (in_.size() - pos_ < n) {
      format_error("truncated " + what + ": need " + std::to_string(n) +
                   " bytes at offset " + std::to_string(pos_) + ", have " +
                   std::to_string(in_.size() - pos_));
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8(const std::string& what) { return take(1, what)[0]; }
  std::uint16_t u16(const std::string& what) {
    auto b = take(2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32(const std::string& what) {
    auto b = take(4, what);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t record_size(FrameType type, std::uint32_t width,
                        std::uint32_t height) {
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  return 1 + (type == FrameType::Intra
                  ? pixels
                  : 2 * pixels / (kS2fBlockSize * kS2fBlockSize));
}

void validate(const S2fStream& stream) {
  const S2fHeader& h = stream.header;
  validate_header(h);
  if (stream.records.size() != h.frame_count) {
    format_error("frame_count " + std::to_string(h.frame_count) +
                 " does not match " + std::to_string(stream.records.size()) +
                 " records");
  }
  for (std::size_t k = 0; k < stream.records.size(); ++k) {
    const FrameRecord& rec = stream.records[k];
    const bool want_intra = is_intra_index(k, h.gop_length);
    if ((rec.type() == FrameType::Intra) != want_intra) {
      format_error("record " + std::to_string(k) + " must be " +
                   (want_intra ? "an I" : "a P") + " frame for gop_length " +
                   std::to_string(h.gop_length));
    }
    if (want_intra) {
      const Frame& f = rec.intra();
      if (f.width() != static_cast<int>(h.width) ||
          f.height() != static_cast<int>(h.height)) {
        format_error("record " + std::to_string(k) +
                     ": I frame size does not match the header");
      }
    } else {
      validate_field(rec.vectors(), h, k);
    }
  }
}

EncodeResult encode_with_reconstruction(const VideoSequence& video,
                                        int gop_length,
                                        std::optional<WatermarkDims> wm) {
  video.validate();
  require_gop(gop_length);

  EncodeResult result;
  S2fHeader& h = result.stream.header;
  h.width = static_cast<std::uint32_t>(video.width());
  h.height = static_cast<std::uint32_t>(video.height());
  h.frame_count = static_cast<std::uint32_t>(video.frames.size());
  h.gop_length = static_cast<std::uint8_t>(gop_length);
  if (wm) {
    h.wm_width = wm->width;
    h.wm_height = wm->height;
  }
  validate_header(h);

  const SearchConfig cfg;
  result.stream.records.reserve(video.frames.size());
  result.reconstruction.reserve(video.frames.size());
  for (std::size_t k = 0; k < video.frames.size(); ++k) {
    const Frame& frame = video.frames[k];
    if (is_intra_index(k, h.gop_length)) {
      result.stream.records.push_back({frame});
      result.reconstruction.push_back(frame);
    } else {
      const Frame& reference = result.reconstruction.back();
      MotionField field = estimate_motion(frame, reference, cfg);
      result.reconstruction.push_back(compensate(reference, field));
      result.stream.records.push_back({std::move(field)});
    }
  }
  return result;
}

S2fStream encode(const VideoSequence& video, int gop_length,
                 std::optional<WatermarkDims> wm) {
  return encode_with_reconstruction(video, gop_length, wm).stream;
}

VideoSequence decode(const S2fStream& stream) {
  validate(stream);
  VideoSequence video;
  video.frames.reserve(stream.records.size());
  for (const FrameRecord& rec : stream.records) {
    if (rec.type() == FrameType::Intra) {
      video.frames.push_back(rec.intra());
    } else {
      video.frames.push_back(compensate(video.frames.back(), rec.vectors()));
    }
  }
  return video;
}

std::vector<std::uint8_t> serialize(const S2fStream& stream) {
  validate(stream);
  const S2fHeader& h = stream.header;

  std::size_t total = kS2fHeaderSize;
  for (const FrameRecord& rec : stream.records) {
    total += record_size(rec.type(), h.width, h.height);
  }
  std::vector<std::uint8_t> out;
  out.reserve(total);
  Writer w(out);
  w.bytes(kS2fMagic);
  w.u16(h.version);
  w.u32(h.width);
  w.u32(h.height);
  w.u32(h.frame_count);
  w.u8(h.block_size);
  w.u8(h.gop_length);
  w.u16(h.wm_width);
  w.u16(h.wm_height);

  for (const FrameRecord& rec : stream.records) {
    w.u8(static_cast<std::uint8_t>(rec.type()));
    if (rec.type() == FrameType::Intra) {
      w.bytes(rec.intra().pixels());
    } else {
      for (const MotionVector& v : rec.vectors().vectors) {
        w.u8(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.dx)));
        w.u8(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.dy)));
      }
    }
  }
  return out;
}

S2fStream parse(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(kS2fMagic.size(), "header (magic)");
  if (!std::equal(magic.begin(), magic.end(), kS2fMagic.begin())) {
    format_error("bad magic: expected \"S2F1\"");
  }
  if (bytes.size() < kS2fHeaderSize) {
    format_error("truncated header: " + std::to_string(bytes.size()) +
                 " of 24 bytes");
  }
  S2fStream stream;
  S2fHeader& h = stream.header;
  h.version = r.u16("version");
  if (h.version != kS2fVersion) {
    format_error("unsupported version " + std::to_string(h.version));
  }
  h.width = r.u32("width");
  h.height = r.u32("height");
  h.frame_count = r.u32("frame_count");
  h.block_size = r.u8("block_size");
  h.gop_length = r.u8("gop_length");
  h.wm_width = r.u16("wm_width");
  h.wm_height = r.u16("wm_height");
  validate_header(h);

  const int width = static_cast<int>(h.width);
  const int height = static_cast<int>(h.height);
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  const int rows = height / kS2fBlockSize;
  const int cols = width / kS2fBlockSize;

  // Cheap upper bound before allocating: each record needs at least the
  // P-record size.
  if (r.remaining() / record_size(FrameType::Predicted, h.width, h.height) <
      h.frame_count) {
    format_error("truncated stream: frame_count " +
                 std::to_string(h.frame_count) + " of " +
                 std::to_string(h.width) + "x" + std::to_string(h.height) +
                 " frames needs more than the " +
                 std::to_string(r.remaining()) + " payload bytes present");
  }

  stream.records.reserve(h.frame_count);
  for (std::uint32_t k = 0; k < h.frame_count; ++k) {
    const std::string rec = "record " + std::to_string(k);
    const std::uint8_t type = r.u8(rec + " type");
    if (type > static_cast<std::uint8_t>(FrameType::Predicted)) {
      format_error(rec + ": unknown frame type " + std::to_string(type));
    }
    const bool want_intra = is_intra_index(k, h.gop_length);
    if ((type == static_cast<std::uint8_t>(FrameType::Intra)) != want_intra) {
      format_error(rec + ": I-frame placement violates gop_length " +
                   std::to_string(h.gop_length));
    }
    if (want_intra) {
      auto raw = r.take(pixels, rec + " I payload");
      stream.records.push_back(
          {Frame(width, height, std::vector<std::uint8_t>(raw.begin(), raw.end()))});
    } else {
      auto raw = r.take(2 * static_cast<std::size_t>(rows) * cols,
                        rec + " P payload");
      MotionField field(kS2fBlockSize, rows, cols);
      for (std::size_t i = 0; i < field.vectors.size(); ++i) {
        field.vectors[i] = {static_cast<std::int8_t>(raw[2 * i]),
                            static_cast<std::int8_t>(raw[2 * i + 1])};
      }
      validate_field(field, h, k);
      stream.records.push_back({std::move(field)});
    }
  }
  if (r.remaining() != 0) {
    format_error(std::to_string(r.remaining()) +
                 " trailing bytes after the last record (frame_count " +
                 std::to_string(h.frame_count) + ")");
  }
  return stream;
}

}  // namespace s2f
