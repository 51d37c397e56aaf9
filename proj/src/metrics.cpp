#include "s2f/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

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

// Exact integer moments of a pixel pair. Raw sums fit in 64 bits for any
// realistic frame; the n-scaled products are formed in 128 bits.
struct Moments {
  std::int64_t n = 0;
  std::int64_t sa = 0, sb = 0;
  std::int64_t saa = 0, sbb = 0, sab = 0;

  Moments(const Image& a, const Image& b) {
    auto pa = a.pixels();
    auto pb = b.pixels();
    n = static_cast<std::int64_t>(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const std::int64_t x = pa[i];
      const std::int64_t y = pb[i];
      sa += x;
      sb += y;
      saa += x * x;
      sbb += y * y;
      sab += x * y;
    }
  }

  using Wide = __int128;

  // n^2 times the biased (co)variances, exact.
  Wide scaled_var_a() const { return Wide{n} * saa - Wide{sa} * sa; }
  Wide scaled_var_b() const { return Wide{n} * sbb - Wide{sb} * sb; }
  Wide scaled_cov() const { return Wide{n} * sab - Wide{sa} * sb; }
};

constexpr double kPeak = 255.0;

}  // namespace

double mse(const Image& a, const Image& b) {
  require_same_size(a, b, "mse");
  std::int64_t total = 0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
    total += d * d;
  }
  return static_cast<double>(total) / static_cast<double>(pa.size());
}

double psnr(const Image& a, const Image& b) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / err);
}

double correlation(const Image& a, const Image& b) {
  require_same_size(a, b, "correlation");
  const Moments m(a, b);
  const auto va = m.scaled_var_a();
  const auto vb = m.scaled_var_b();
  if (va == 0 || vb == 0) {
    throw Error(ErrorKind::Undefined,
                "correlation is undefined for a constant image");
  }
  // The n^2 scale cancels between numerator and denominator.
  return static_cast<double>(m.scaled_cov()) /
         std::sqrt(static_cast<double>(va) * static_cast<double>(vb));
}

double ssim(const Image& a, const Image& b, const SsimParams& params) {
  require_same_size(a, b, "ssim");
  const Moments m(a, b);
  const double n = static_cast<double>(m.n);
  const double mu_a = static_cast<double>(m.sa) / n;
  const double mu_b = static_cast<double>(m.sb) / n;
  // Unbiased (N-1) estimators; a single pixel has no spread.
  const double denom = m.n > 1 ? n * (n - 1.0) : 1.0;
  const double var_a = m.n > 1 ? static_cast<double>(m.scaled_var_a()) / denom : 0.0;
  const double var_b = m.n > 1 ? static_cast<double>(m.scaled_var_b()) / denom : 0.0;
  const double cov = m.n > 1 ? static_cast<double>(m.scaled_cov()) / denom : 0.0;

  const double c1 = params.c1();
  const double c2 = params.c2();
  if (params.alpha == 1.0 && params.beta == 1.0 && params.gamma == 1.0) {
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
  }

  const double sd_a = std::sqrt(var_a);
  const double sd_b = std::sqrt(var_b);
  const double c3 = c2 / 2.0;
  const double lum = (2.0 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
  const double con = (2.0 * sd_a * sd_b + c2) / (var_a + var_b + c2);
  const double str = (cov + c3) / (sd_a * sd_b + c3);
  return std::pow(lum, params.alpha) * std::pow(con, params.beta) *
         std::pow(str, params.gamma);
}

MetricsReport sequence_report(const VideoSequence& original,
                              const VideoSequence& decoded,
                              const BinaryWatermark* wm,
                              std::optional<WatermarkDims> wm_dims) {
  original.validate();
  decoded.validate();
  if (original.frames.size() != decoded.frames.size()) {
    throw Error(ErrorKind::Dimension,
                "frame count mismatch: " +
                    std::to_string(original.frames.size()) + " vs " +
                    std::to_string(decoded.frames.size()));
  }
  int wm_w = 0;
  int wm_h = 0;
  if (wm) {
    wm_w = wm_dims ? wm_dims->width : wm->width();
    wm_h = wm_dims ? wm_dims->height : wm->height();
    if (wm_w != wm->width() || wm_h != wm->height()) {
      throw Error(ErrorKind::Dimension,
                  "watermark is " + std::to_string(wm->width()) + "x" +
                      std::to_string(wm->height()) + " but " +
                      std::to_string(wm_w) + "x" + std::to_string(wm_h) +
                      " was requested");
    }
  }

  MetricsReport report;
  report.has_watermark = wm != nullptr;
  report.rows.reserve(original.frames.size());
  for (std::size_t k = 0; k < original.frames.size(); ++k) {
    FrameMetrics row;
    row.frame_index = k;
    row.mse = mse(original.frames[k], decoded.frames[k]);
    row.psnr_db = psnr(original.frames[k], decoded.frames[k]);
    if (wm) {
      const BinaryWatermark recovered = extract(decoded.frames[k], wm_w, wm_h);
      try {
        row.wm_correlation = correlation(wm->image(), recovered.image());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undefined) throw;
      }
      row.wm_ssim = ssim(wm->image(), recovered.image());
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string report_csv(const MetricsReport& report) {
  auto fmt = [](double v) -> std::string {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
  };
  std::string out = "frame,mse,psnr_db,wm_correlation,wm_ssim\n";
  for (const FrameMetrics& row : report.rows) {
    out += std::to_string(row.frame_index) + "," + fmt(row.mse) + "," +
           fmt(row.psnr_db) + ",";
    if (report.has_watermark) {
      out += row.wm_correlation ? fmt(*row.wm_correlation) : "nan";
      out += ",";
      out += row.wm_ssim ? fmt(*row.wm_ssim) : "nan";
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace s2f
