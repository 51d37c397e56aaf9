#pragma once

#include <string>
#include <vector>

#include "s2f/image.hpp"

namespace s2f {

/// Per-block mean luminance, row-major over the block grid.
struct MeanMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int row, int col) const { return values[row * cols + col]; }
};

/// Pixel displacement from a current block to its match in the reference
/// frame: reference origin = current origin + (dx, dy).
struct MotionVector {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

struct MotionField {
  int block_size = 4;
  int rows = 0;
  int cols = 0;
  std::vector<MotionVector> vectors;

  MotionField() = default;
  MotionField(int block_size, int rows, int cols)
      : block_size(block_size), rows(rows), cols(cols),
        vectors(static_cast<std::size_t>(rows) * cols) {}

  const MotionVector& at(int row, int col) const {
    return vectors[row * cols + col];
  }
  MotionVector& at(int row, int col) { return vectors[row * cols + col]; }

  bool is_zero() const;

  friend bool operator==(const MotionField&, const MotionField&) = default;
};

struct BlockCoord {
  int row = 0;
  int col = 0;
};

/// Mean-matrix search setup: 4x4 blocks, window of +/-4 block positions.
struct SearchConfig {
  int block_size = 4;
  int window_radius = 4;  // in block units; 4 gives a 9x9 window
};

enum class CostFunction { Mad, Mse };

/// Means of every block_size x block_size block. Sums are exact integers,
/// divided once.
MeanMatrix block_means(const Image& frame, int block_size = 4);

/// Best match for one block: minimizes |current_mean - ref(q)| over the
/// window around `center`, clipped to the matrix. Ties go to the smallest
/// Chebyshev distance from the center, then to window raster order.
MotionVector search_block(double current_mean, const MeanMatrix& ref_means,
                          BlockCoord center, const SearchConfig& cfg = {});

MotionField estimate_motion(const Frame& current, const Frame& reference,
                            const SearchConfig& cfg = {});

/// Builds each output block from the reference block at origin + vector.
/// Throws a Format error for any vector that leaves the frame.
Frame compensate(const Frame& reference, const MotionField& field);

/// (1/N^2) * sum |a - b| over equally sized blocks.
double mad_cost(const Image& block_a, const Image& block_b);
/// (1/N^2) * sum (a - b)^2 over equally sized blocks.
double mse_cost(const Image& block_a, const Image& block_b);

/// Exhaustive pixel-granular search in [-radius, radius]^2, in-frame
/// candidates only, with the same tie rules as search_block.
MotionField full_search(const Frame& current, const Frame& reference,
                        int block_size = 16, int radius = 7,
                        CostFunction cost = CostFunction::Mad);

/// Rows "block_row,block_col,dx,dy" preceded by that header line.
std::string motion_field_csv(const MotionField& field);

}  // namespace s2f
