#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "s2f/codec.hpp"
#include "s2f/error.hpp"
#include "s2f/metrics.hpp"
#include "s2f/motion.hpp"
#include "s2f/pgm.hpp"
#include "s2f/synthetic.hpp"
#include "s2f/watermark.hpp"

namespace s2f::cli {

namespace fs = std::filesystem;

namespace {

struct Size {
  int width = 0;
  int height = 0;
};

Size parse_size(const std::string& text, const char* flag) {
  static const std::regex pattern(R"((\d{1,6})[xX](\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorKind::Argument,
                std::string(flag) + " expects WxH, got \"" + text + "\"");
  }
  return {std::stoi(m[1]), std::stoi(m[2])};
}

MotionVector parse_motion(const std::string& text) {
  static const std::regex pattern(R"((-?\d{1,3}),(-?\d{1,3}))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorKind::Argument,
                "--motion expects DX,DY, got \"" + text + "\"");
  }
  return {std::stoi(m[1]), std::stoi(m[2])};
}

WatermarkDims to_dims(Size s) {
  if (s.width < 1 || s.height < 1 || s.width > 65535 || s.height > 65535) {
    throw Error(ErrorKind::Argument, "watermark size must be in 1..65535");
  }
  return {static_cast<std::uint16_t>(s.width),
          static_cast<std::uint16_t>(s.height)};
}

void require_exists(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorKind::Io, "no such file or directory: " + path.string());
  }
}

void require_parent(const fs::path& out) {
  const fs::path parent = out.parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw Error(ErrorKind::Io,
                "output directory does not exist: " + parent.string());
  }
}

VideoSequence read_sequence_dir(const fs::path& dir) {
  const auto paths = list_sequence(dir);
  if (paths.empty()) {
    throw Error(ErrorKind::Io, "no .pgm frames in " + dir.string());
  }
  return load_sequence(paths);
}

BinaryWatermark read_watermark(const fs::path& path, int threshold) {
  return binarize(read_pgm_image(path), static_cast<std::uint8_t>(threshold));
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument:
      return kUsage;
    case ErrorKind::Io:
      return kIo;
    case ErrorKind::Format:
    case ErrorKind::Undefined:
      return kFormat;
    case ErrorKind::Capacity:
    case ErrorKind::Dimension:
      return kCapacity;
  }
  return kFormat;
}

const char* kind_label(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument:
      return "usage error";
    case ErrorKind::Io:
      return "I/O error";
    case ErrorKind::Format:
      return "format error";
    case ErrorKind::Undefined:
      return "undefined result";
    case ErrorKind::Capacity:
      return "capacity error";
    case ErrorKind::Dimension:
      return "dimension error";
  }
  return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Grayscale video watermarking and mean-matrix motion codec",
               "s2f"};
  app.require_subcommand(1);

  // embed
  std::string embed_cover, embed_wm, embed_out;
  int threshold = 128;
  auto* embed_cmd = app.add_subcommand(
      "embed", "Watermark one PGM frame, or every frame of a directory");
  embed_cmd->add_option("cover", embed_cover, "Cover PGM or frame directory")
      ->required();
  embed_cmd->add_option("watermark", embed_wm, "Watermark PGM")->required();
  embed_cmd->add_option("output", embed_out, "Output PGM or directory")
      ->required();
  embed_cmd->add_option("--threshold", threshold,
                        "Binarization threshold for the watermark image")
      ->check(CLI::Range(0, 255));

  // extract
  std::string extract_in, extract_out, extract_size;
  int extract_frame = 0;
  auto* extract_cmd = app.add_subcommand(
      "extract", "Recover a watermark from a PGM frame or an .s2f stream");
  extract_cmd->add_option("stego", extract_in, "Watermarked PGM or .s2f file")
      ->required();
  extract_cmd->add_option("output", extract_out, "Recovered watermark PGM")
      ->required();
  extract_cmd->add_option("--wm-size", extract_size,
                          "Watermark size WxH (defaults to the .s2f header)");
  extract_cmd->add_option("--frame", extract_frame,
                          "Frame index when reading an .s2f stream")
      ->check(CLI::NonNegativeNumber);

  // encode
  std::string encode_dir, encode_out, encode_size, encode_mv_dir;
  int gop = kDefaultGop;
  auto* encode_cmd =
      app.add_subcommand("encode", "Compress a PGM sequence into .s2f");
  encode_cmd->add_option("frames", encode_dir, "Directory of PGM frames")
      ->required();
  encode_cmd->add_option("output", encode_out, "Output .s2f file")->required();
  encode_cmd->add_option("--gop", gop, "I-frame period")
      ->check(CLI::Range(1, 255));
  encode_cmd->add_option("--wm-size", encode_size,
                         "Watermark size WxH recorded in the header");
  encode_cmd->add_option("--mv-dir", encode_mv_dir,
                         "Also write one motion-vector CSV per P frame here");

  // decode
  std::string decode_in, decode_dir;
  auto* decode_cmd =
      app.add_subcommand("decode", "Reconstruct a PGM sequence from .s2f");
  decode_cmd->add_option("input", decode_in, "Input .s2f file")->required();
  decode_cmd->add_option("output", decode_dir, "Output directory")->required();

  // transcode
  std::string trans_dir, trans_wm, trans_out;
  auto* trans_cmd = app.add_subcommand(
      "transcode", "Watermark every frame, then encode to .s2f");
  trans_cmd->add_option("frames", trans_dir, "Directory of PGM frames")
      ->required();
  trans_cmd->add_option("watermark", trans_wm, "Watermark PGM")->required();
  trans_cmd->add_option("output", trans_out, "Output .s2f file")->required();
  trans_cmd->add_option("--gop", gop, "I-frame period")
      ->check(CLI::Range(1, 255));
  trans_cmd->add_option("--threshold", threshold,
                        "Binarization threshold for the watermark image")
      ->check(CLI::Range(0, 255));

  // metrics
  std::string metrics_orig, metrics_dec, metrics_out, metrics_wm, metrics_size;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Per-frame MSE/PSNR and watermark correlation/SSIM as CSV");
  metrics_cmd->add_option("original", metrics_orig, "Original frame directory")
      ->required();
  metrics_cmd->add_option("decoded", metrics_dec, "Decoded frame directory")
      ->required();
  metrics_cmd->add_option("report", metrics_out, "Output CSV")->required();
  metrics_cmd->add_option("--wm", metrics_wm, "Original watermark PGM");
  metrics_cmd->add_option("--wm-size", metrics_size,
                          "Watermark size WxH (defaults to the PGM size)");
  metrics_cmd->add_option("--threshold", threshold,
                          "Binarization threshold for the watermark image")
      ->check(CLI::Range(0, 255));

  // gen
  std::string gen_size = "256x256", gen_motion = "0,0", gen_dir;
  int gen_frames = 20;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic test sequence");
  gen_cmd->add_option("--size", gen_size, "Frame size WxH");
  gen_cmd->add_option("--frames", gen_frames, "Frame count")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--motion", gen_motion, "Per-frame motion DX,DY");
  gen_cmd->add_option("--seed", gen_seed, "Texture seed");
  gen_cmd->add_option("output", gen_dir, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "s2f: usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*embed_cmd) {
      require_exists(embed_cover);
      require_exists(embed_wm);
      const BinaryWatermark wm = read_watermark(embed_wm, threshold);
      if (fs::is_directory(embed_cover)) {
        VideoSequence video = read_sequence_dir(embed_cover);
        for (Frame& f : video.frames) f = embed(f, wm);
        save_sequence(video, embed_out);
        out << "embedded " << wm.width() << "x" << wm.height()
            << " watermark into " << video.frames.size() << " frames\n";
      } else {
        require_parent(embed_out);
        const Frame stego = embed(read_pgm_frame(embed_cover), wm);
        write_file_atomic(embed_out, save_pgm(stego));
      }
    } else if (*extract_cmd) {
      require_exists(extract_in);
      require_parent(extract_out);
      std::optional<WatermarkDims> dims;
      if (!extract_size.empty()) {
        dims = to_dims(parse_size(extract_size, "--wm-size"));
      }
      Frame stego;
      if (fs::path(extract_in).extension() == ".s2f") {
        const S2fStream stream = parse(read_file(extract_in));
        if (!dims) dims = stream.header.watermark();
        const VideoSequence video = decode(stream);
        if (static_cast<std::size_t>(extract_frame) >= video.frames.size()) {
          throw Error(ErrorKind::Argument,
                      "--frame " + std::to_string(extract_frame) +
                          " is out of range (stream has " +
                          std::to_string(video.frames.size()) + " frames)");
        }
        stego = video.frames[extract_frame];
      } else {
        stego = read_pgm_frame(extract_in);
      }
      if (!dims) {
        throw Error(ErrorKind::Argument,
                    "watermark size unknown: pass --wm-size WxH");
      }
      const BinaryWatermark wm = extract(stego, dims->width, dims->height);
      write_file_atomic(extract_out, save_pgm(wm.image()));
    } else if (*encode_cmd || *trans_cmd) {
      const bool transcode = static_cast<bool>(*trans_cmd);
      const std::string& dir = transcode ? trans_dir : encode_dir;
      const std::string& dest = transcode ? trans_out : encode_out;
      require_exists(dir);
      if (transcode) require_exists(trans_wm);
      require_parent(dest);

      VideoSequence video = read_sequence_dir(dir);
      std::optional<WatermarkDims> dims;
      if (transcode) {
        const BinaryWatermark wm = read_watermark(trans_wm, threshold);
        for (Frame& f : video.frames) f = embed(f, wm);
        dims = to_dims({wm.width(), wm.height()});
      } else if (!encode_size.empty()) {
        dims = to_dims(parse_size(encode_size, "--wm-size"));
      }
      const S2fStream stream = encode(video, gop, dims);
      const auto bytes = serialize(stream);
      if (!encode_mv_dir.empty()) {
        fs::create_directories(encode_mv_dir);
        for (std::size_t k = 0; k < stream.records.size(); ++k) {
          if (stream.records[k].type() != FrameType::Predicted) continue;
          char name[32];
          std::snprintf(name, sizeof(name), "mv_%04zu.csv", k);
          write_file_atomic(fs::path(encode_mv_dir) / name,
                            motion_field_csv(stream.records[k].vectors()));
        }
      }
      write_file_atomic(dest, bytes);
      out << "encoded " << video.frames.size() << " frames ("
          << video.width() << "x" << video.height() << ", gop " << gop
          << ") into " << bytes.size() << " bytes\n";
    } else if (*decode_cmd) {
      require_exists(decode_in);
      const VideoSequence video = decode(parse(read_file(decode_in)));
      save_sequence(video, decode_dir);
      out << "decoded " << video.frames.size() << " frames\n";
    } else if (*metrics_cmd) {
      require_exists(metrics_orig);
      require_exists(metrics_dec);
      if (!metrics_wm.empty()) require_exists(metrics_wm);
      require_parent(metrics_out);
      if (metrics_wm.empty() && !metrics_size.empty()) {
        throw Error(ErrorKind::Argument, "--wm-size requires --wm");
      }
      const VideoSequence original = read_sequence_dir(metrics_orig);
      const VideoSequence decoded = read_sequence_dir(metrics_dec);
      std::optional<BinaryWatermark> wm;
      std::optional<WatermarkDims> dims;
      if (!metrics_wm.empty()) {
        wm = read_watermark(metrics_wm, threshold);
        if (!metrics_size.empty()) {
          dims = to_dims(parse_size(metrics_size, "--wm-size"));
        }
      }
      const MetricsReport report =
          sequence_report(original, decoded, wm ? &*wm : nullptr, dims);
      write_file_atomic(metrics_out, report_csv(report));
    } else if (*gen_cmd) {
      const Size size = parse_size(gen_size, "--size");
      const MotionVector motion = parse_motion(gen_motion);
      SyntheticSpec spec;
      spec.width = size.width;
      spec.height = size.height;
      spec.frame_count = gen_frames;
      spec.dx = motion.dx;
      spec.dy = motion.dy;
      spec.seed = gen_seed;
      save_sequence(gen_synthetic(spec), gen_dir);
    }
  } catch (const Error& e) {
    err << "s2f: " << kind_label(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "s2f: I/O error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

}  // namespace s2f::cli
