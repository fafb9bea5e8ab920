#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "saa/pgm.hpp"

namespace saa {

class QualityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QualityReport {
  double psnr_db = 0.0;  // +infinity for identical images
  double ssim = 0.0;
};

// 10*log10(255^2 / MSE); +infinity when MSE = 0.
inline double psnr(const GrayImage& reference, const GrayImage& target) {
  if (reference.width != target.width || reference.height != target.height)
    throw QualityError("psnr: image dimensions differ");
  double sq = 0.0;
  for (size_t i = 0; i < reference.pixels.size(); ++i) {
    const double d = double(reference.pixels[i]) - double(target.pixels[i]);
    sq += d * d;
  }
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sq / static_cast<double>(reference.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace qualitydetail {

inline const std::vector<double>& gaussian11() {
  static const std::vector<double> k = [] {
    std::vector<double> g(11);
    double sum = 0.0;
    for (int i = 0; i < 11; ++i) {
      const double d = i - 5;
      g[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
      sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
  }();
  return k;
}

// Valid-mode separable convolution with the 11-tap window: (h, w) ->
// (h-10, w-10).
inline std::vector<double> window_filter(const std::vector<double>& in, int h,
                                         int w) {
  const std::vector<double>& k = gaussian11();
  const int oh = h - 10, ow = w - 10;
  std::vector<double> mid(size_t(oh) * w, 0.0);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = 0; i < 11; ++i) acc += k[i] * in[size_t(r + i) * w + c];
      mid[size_t(r) * w + c] = acc;
    }
  std::vector<double> out(size_t(oh) * ow, 0.0);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int i = 0; i < 11; ++i) acc += k[i] * mid[size_t(r) * w + c + i];
      out[size_t(r) * ow + c] = acc;
    }
  return out;
}

}  // namespace qualitydetail

// Mean SSIM over all sliding 11x11 windows, Gaussian weighting sigma = 1.5,
// K1 = 0.01, K2 = 0.03, L = 255.
inline double ssim(const GrayImage& reference, const GrayImage& target) {
  if (reference.width != target.width || reference.height != target.height)
    throw QualityError("ssim: image dimensions differ");
  if (reference.width < 11 || reference.height < 11)
    throw QualityError("ssim: image smaller than the 11x11 window");
  const int h = reference.height, w = reference.width;
  const size_t count = reference.pixels.size();
  std::vector<double> x(count), y(count), xx(count), yy(count), xy(count);
  for (size_t i = 0; i < count; ++i) {
    x[i] = reference.pixels[i];
    y[i] = target.pixels[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  using qualitydetail::window_filter;
  const std::vector<double> mx = window_filter(x, h, w);
  const std::vector<double> my = window_filter(y, h, w);
  const std::vector<double> mxx = window_filter(xx, h, w);
  const std::vector<double> myy = window_filter(yy, h, w);
  const std::vector<double> mxy = window_filter(xy, h, w);

  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);
  double total = 0.0;
  for (size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cxy = mxy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

inline QualityReport quality(const GrayImage& reference, const GrayImage& target) {
  return {psnr(reference, target), ssim(reference, target)};
}

}  // namespace saa
