#include "s2f/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>

#include "s2f/error.hpp"

namespace s2f {

namespace {

void require_same_size(const Image& a, const Image& b, const char* what) {
  if (!a.same_size(b)) {
    throw Error(ErrorKind::Dimension,
                std::string(what) + ": size mismatch " +
                    std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

void require_tiles(const Image& frame, int block_size) {
  if (block_size <= 0 || frame.width() % block_size != 0 ||
      frame.height() % block_size != 0) {
    throw Error(ErrorKind::Dimension,
                "frame " + std::to_string(frame.width()) + "x" +
                    std::to_string(frame.height()) +
                    " is not tiled by blocks of " + std::to_string(block_size));
  }
}

template <typename Term>
std::int64_t block_distance(const Image& cur, const Image& ref, int cx, int cy,
                            int rx, int ry, int n, Term term) {
  std::int64_t total = 0;
  for (int y = 0; y < n; ++y) {
    const auto a = cur.row(cy + y).subspan(cx, n);
    const auto b = ref.row(ry + y).subspan(rx, n);
    for (int x = 0; x < n; ++x) {
      total += term(static_cast<int>(a[x]) - static_cast<int>(b[x]));
    }
  }
  return total;
}

}  // namespace

bool MotionField::is_zero() const {
  return std::all_of(vectors.begin(), vectors.end(),
                     [](const MotionVector& v) { return v.dx == 0 && v.dy == 0; });
}

MeanMatrix block_means(const Image& frame, int block_size) {
  require_tiles(frame, block_size);
  MeanMatrix m;
  m.rows = frame.height() / block_size;
  m.cols = frame.width() / block_size;
  m.values.assign(static_cast<std::size_t>(m.rows) * m.cols, 0.0);
  const double area = static_cast<double>(block_size) * block_size;
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      std::int64_t sum = 0;
      for (int y = 0; y < block_size; ++y) {
        for (std::uint8_t v :
             frame.row(r * block_size + y).subspan(c * block_size, block_size)) {
          sum += v;
        }
      }
      m.values[r * m.cols + c] = static_cast<double>(sum) / area;
    }
  }
  return m;
}

MotionVector search_block(double current_mean, const MeanMatrix& ref_means,
                          BlockCoord center, const SearchConfig& cfg) {
  const int top = std::max(0, center.row - cfg.window_radius);
  const int bottom = std::min(ref_means.rows - 1, center.row + cfg.window_radius);
  const int left = std::max(0, center.col - cfg.window_radius);
  const int right = std::min(ref_means.cols - 1, center.col + cfg.window_radius);

  // Visit candidates ring by ring outward from the center, each ring in
  // raster order; a later candidate wins only on strictly lower cost.
  int best_row = center.row;
  int best_col = center.col;
  double best = std::abs(current_mean - ref_means.at(center.row, center.col));
  for (int ring = 1; ring <= cfg.window_radius; ++ring) {
    for (int r = std::max(top, center.row - ring);
         r <= std::min(bottom, center.row + ring); ++r) {
      const bool edge_row = std::abs(r - center.row) == ring;
      const int step = edge_row ? 1 : 2 * ring;
      for (int c = center.col - ring; c <= center.col + ring; c += step) {
        if (c < left || c > right) continue;
        const double cost = std::abs(current_mean - ref_means.at(r, c));
        if (cost < best) {
          best = cost;
          best_row = r;
          best_col = c;
        }
      }
    }
  }
  return {(best_col - center.col) * cfg.block_size,
          (best_row - center.row) * cfg.block_size};
}

MotionField estimate_motion(const Frame& current, const Frame& reference,
                            const SearchConfig& cfg) {
  require_same_size(current, reference, "estimate_motion");
  const MeanMatrix cur = block_means(current, cfg.block_size);
  const MeanMatrix ref = block_means(reference, cfg.block_size);
  MotionField field(cfg.block_size, cur.rows, cur.cols);
  for (int r = 0; r < cur.rows; ++r) {
    for (int c = 0; c < cur.cols; ++c) {
      field.at(r, c) = search_block(cur.at(r, c), ref, {r, c}, cfg);
    }
  }
  return field;
}

Frame compensate(const Frame& reference, const MotionField& field) {
  const int n = field.block_size;
  require_tiles(reference, n);
  if (field.rows != reference.height() / n ||
      field.cols != reference.width() / n ||
      field.vectors.size() != static_cast<std::size_t>(field.rows) * field.cols) {
    throw Error(ErrorKind::Dimension,
                "motion field grid " + std::to_string(field.cols) + "x" +
                    std::to_string(field.rows) + " does not match frame " +
                    std::to_string(reference.width()) + "x" +
                    std::to_string(reference.height()));
  }
  Frame out(reference.width(), reference.height());
  for (int r = 0; r < field.rows; ++r) {
    for (int c = 0; c < field.cols; ++c) {
      const MotionVector v = field.at(r, c);
      const int sx = c * n + v.dx;
      const int sy = r * n + v.dy;
      if (sx < 0 || sy < 0 || sx + n > reference.width() ||
          sy + n > reference.height()) {
        throw Error(ErrorKind::Format,
                    "motion vector (" + std::to_string(v.dx) + "," +
                        std::to_string(v.dy) + ") of block (" +
                        std::to_string(r) + "," + std::to_string(c) +
                        ") points outside the frame");
      }
      for (int y = 0; y < n; ++y) {
        auto src = reference.row(sy + y).subspan(sx, n);
        std::copy(src.begin(), src.end(),
                  out.pixels().begin() +
                      static_cast<std::ptrdiff_t>(r * n + y) * out.width() +
                      c * n);
      }
    }
  }
  return out;
}

double mad_cost(const Image& block_a, const Image& block_b) {
  require_same_size(block_a, block_b, "mad_cost");
  std::int64_t total = 0;
  auto a = block_a.pixels();
  auto b = block_b.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  }
  return static_cast<double>(total) / static_cast<double>(a.size());
}

double mse_cost(const Image& block_a, const Image& block_b) {
  require_same_size(block_a, block_b, "mse_cost");
  std::int64_t total = 0;
  auto a = block_a.pixels();
  auto b = block_b.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    total += d * d;
  }
  return static_cast<double>(total) / static_cast<double>(a.size());
}

MotionField full_search(const Frame& current, const Frame& reference,
                        int block_size, int radius, CostFunction cost) {
  require_same_size(current, reference, "full_search");
  require_tiles(current, block_size);
  if (radius < 0) {
    throw Error(ErrorKind::Argument, "search radius must be non-negative");
  }
  const int n = block_size;
  MotionField field(n, current.height() / n, current.width() / n);
  auto abs_term = [](int d) { return static_cast<std::int64_t>(std::abs(d)); };
  auto sq_term = [](int d) { return static_cast<std::int64_t>(d) * d; };

  for (int r = 0; r < field.rows; ++r) {
    for (int c = 0; c < field.cols; ++c) {
      const int ox = c * n;
      const int oy = r * n;
      // Integer cost sums order candidates exactly like MAD/MSE do.
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      int best_ring = 0;
      MotionVector best_v;
      for (int dy = -radius; dy <= radius; ++dy) {
        if (oy + dy < 0 || oy + dy + n > reference.height()) continue;
        for (int dx = -radius; dx <= radius; ++dx) {
          if (ox + dx < 0 || ox + dx + n > reference.width()) continue;
          const std::int64_t d =
              cost == CostFunction::Mad
                  ? block_distance(current, reference, ox, oy, ox + dx, oy + dy,
                                   n, abs_term)
                  : block_distance(current, reference, ox, oy, ox + dx, oy + dy,
                                   n, sq_term);
          const int ring = std::max(std::abs(dx), std::abs(dy));
          // Raster scan: equal (cost, ring) keeps the earlier candidate.
          if (d < best || (d == best && ring < best_ring)) {
            best = d;
            best_ring = ring;
            best_v = {dx, dy};
          }
        }
      }
      field.at(r, c) = best_v;
    }
  }
  return field;
}

std::string motion_field_csv(const MotionField& field) {
  std::string out = "block_row,block_col,dx,dy\n";
  for (int r = 0; r < field.rows; ++r) {
    for (int c = 0; c < field.cols; ++c) {
      const MotionVector& v = field.at(r, c);
      out += std::to_string(r) + "," + std::to_string(c) + "," +
             std::to_string(v.dx) + "," + std::to_string(v.dy) + "\n";
    }
  }
  return out;
}

}  // namespace s2f
