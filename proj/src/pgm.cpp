#include "s2f/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <string_view>

#include "s2f/error.hpp"

namespace s2f {

namespace fs = std::filesystem;

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments (which run to end of line).
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' &&
               bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* field) {
    skip_separators();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw Error(ErrorKind::Format,
                    std::string("PGM ") + field + " is too large");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      throw Error(ErrorKind::Format,
                  std::string("PGM header: expected ") + field);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void raster_separator() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorKind::Format,
                  "PGM header: missing whitespace before raster");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorKind::Format, "not a binary PGM: magic must be \"P5\"");
  }
  HeaderReader header(bytes.subspan(2));
  const long width = header.number("width");
  const long height = header.number("height");
  const long maxval = header.number("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::Format, "PGM dimensions must be positive");
  }
  if (maxval != 255) {
    throw Error(ErrorKind::Format,
                "unsupported PGM maxval " + std::to_string(maxval) +
                    " (only 255 is accepted)");
  }
  header.raster_separator();

  const std::size_t offset = 2 + header.position();
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - offset < need) {
    throw Error(ErrorKind::Format,
                "truncated PGM payload: expected " + std::to_string(need) +
                    " bytes, found " + std::to_string(bytes.size() - offset));
  }
  auto raster = bytes.subspan(offset, need);
  return Image(static_cast<int>(width), static_cast<int>(height),
               std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

Frame load_pgm(std::span<const std::uint8_t> bytes) {
  return Frame(decode_pgm(bytes));
}

Bytes save_pgm(const Image& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  Bytes out;
  out.reserve(header.size() + image.size());
  out.insert(out.end(), header.begin(), header.end());
  auto pixels = image.pixels();
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorKind::Io, "read failed: " + path.string());
  }
  return data;
}

void write_file_atomic(const fs::path& path,
                       std::span<const std::uint8_t> bytes) {
  fs::path tmp = path;
  tmp += ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorKind::Io, "cannot create " + tmp.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorKind::Io, "write failed: " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorKind::Io,
                "cannot move output into place: " + path.string() + ": " +
                    ec.message());
  }
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(
      path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                      text.size()));
}

Image read_pgm_image(const fs::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

Frame read_pgm_frame(const fs::path& path) {
  Image image = read_pgm_image(path);
  try {
    return Frame(std::move(image));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

VideoSequence load_sequence(std::span<const fs::path> paths) {
  if (paths.empty()) {
    throw Error(ErrorKind::Argument, "no input frames given");
  }
  VideoSequence video;
  video.frames.reserve(paths.size());
  for (const auto& path : paths) {
    video.frames.push_back(read_pgm_frame(path));
    const Frame& f = video.frames.back();
    if (!f.same_size(video.frames.front())) {
      throw Error(ErrorKind::Dimension,
                  path.string() + " is " + std::to_string(f.width()) + "x" +
                      std::to_string(f.height()) + ", expected " +
                      std::to_string(video.width()) + "x" +
                      std::to_string(video.height()));
    }
  }
  return video;
}

std::vector<fs::path> list_sequence(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::Io, "not a directory: " + dir.string());
  }
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      paths.push_back(entry.path());
    }
  }
  if (ec) {
    throw Error(ErrorKind::Io, "cannot list " + dir.string() + ": " +
                                   ec.message());
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename() < b.filename();
            });
  return paths;
}

std::string sequence_file_name(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%04zu.pgm", index);
  return name;
}

std::vector<fs::path> save_sequence(const VideoSequence& video,
                                    const fs::path& dir) {
  video.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::Io,
                "cannot create " + dir.string() + ": " + ec.message());
  }
  std::vector<fs::path> written;
  written.reserve(video.frames.size());
  for (std::size_t k = 0; k < video.frames.size(); ++k) {
    fs::path path = dir / sequence_file_name(k);
    write_file_atomic(path, save_pgm(video.frames[k]));
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace s2f
