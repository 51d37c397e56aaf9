#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2f/image.hpp"
#include "s2f/watermark.hpp"

namespace s2f {

/// SSIM stabilizers and component exponents. With all exponents equal to 1
/// the product of luminance, contrast and structure terms collapses to the
/// closed form (2 mu_x mu_y + C1)(2 sigma_xy + C2) /
/// ((mu_x^2 + mu_y^2 + C1)(sigma_x^2 + sigma_y^2 + C2)).
struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
  double alpha = 1.0;  // luminance
  double beta = 1.0;   // contrast
  double gamma = 1.0;  // structure

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

/// Mean squared pixel difference over the whole image.
double mse(const Image& a, const Image& b);

/// 10*log10(255^2 / mse) in dB; +infinity for identical images.
double psnr(const Image& a, const Image& b);

/// Pearson correlation over all pixels. Throws ErrorKind::Undefined when
/// either image is constant.
double correlation(const Image& a, const Image& b);

/// Single global SSIM over the whole image; variance and covariance use the
/// N-1 denominator.
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

struct FrameMetrics {
  std::size_t frame_index = 0;
  double mse = 0.0;
  double psnr_db = 0.0;
  // Watermark columns: absent without a watermark; correlation is also
  // absent when undefined (constant original or recovered watermark).
  std::optional<double> wm_correlation;
  std::optional<double> wm_ssim;
};

struct MetricsReport {
  bool has_watermark = false;
  std::vector<FrameMetrics> rows;
};

/// Per-frame video metrics; with a watermark, also recovers it from each
/// decoded frame and scores it against the original.
MetricsReport sequence_report(const VideoSequence& original,
                              const VideoSequence& decoded,
                              const BinaryWatermark* wm = nullptr,
                              std::optional<WatermarkDims> wm_dims = std::nullopt);

/// "frame,mse,psnr_db,wm_correlation,wm_ssim" then one row per frame.
/// Infinite PSNR prints as "inf"; values use 6 significant digits.
std::string report_csv(const MetricsReport& report);

}  // namespace s2f
