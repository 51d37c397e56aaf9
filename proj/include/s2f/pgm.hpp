#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "s2f/image.hpp"

namespace s2f {

using Bytes = std::vector<std::uint8_t>;

/// Parses a binary PGM (P5, maxval 255) of any size. Comments and
/// whitespace between header tokens follow the netpbm convention.
Image decode_pgm(std::span<const std::uint8_t> bytes);

/// As decode_pgm, but additionally enforces the frame tiling rule.
Frame load_pgm(std::span<const std::uint8_t> bytes);

/// Canonical form: "P5\n<w> <h>\n255\n" followed by the raw pixels.
Bytes save_pgm(const Image& image);

Bytes read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it into place, so a failed
/// write never leaves a truncated file at `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

Image read_pgm_image(const std::filesystem::path& path);
Frame read_pgm_frame(const std::filesystem::path& path);

/// Loads frames in the given order; all must share one size.
VideoSequence load_sequence(std::span<const std::filesystem::path> paths);

/// All *.pgm entries of `dir`, sorted by file name.
std::vector<std::filesystem::path> list_sequence(
    const std::filesystem::path& dir);

/// Writes frame_0000.pgm, frame_0001.pgm, ... into `dir` (created if
/// missing). Returns the written paths in frame order.
std::vector<std::filesystem::path> save_sequence(
    const VideoSequence& video, const std::filesystem::path& dir);

std::string sequence_file_name(std::size_t index);

}  // namespace s2f
