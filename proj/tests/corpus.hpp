// Deterministic 512x512 synthetic benchmark corpus. The images imitate the
// character of classic photographic test material (smooth regions, objects,
// ripples, texture, mild sensor noise); corpus files are pipeline inputs, not
// golden data.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "saa/pgm.hpp"
#include "saa/rng.hpp"

namespace corpus {

inline constexpr int kSize = 512;

namespace detail {

inline std::vector<double> smooth_noise(uint64_t seed, double std_dev,
                                        double sigma) {
  const int n = kSize;
  std::vector<double> noise(size_t(n) * n);
  saa::SplitMix64 gen(seed);
  for (size_t i = 0; i < noise.size(); i += 2) {
    // Box-Muller on splitmix64 uniforms
    const double u1 =
        (static_cast<double>(gen.next() >> 11) + 0.5) / 9007199254740992.0;
    const double u2 =
        (static_cast<double>(gen.next() >> 11) + 0.5) / 9007199254740992.0;
    const double r = std::sqrt(-2.0 * std::log(u1));
    noise[i] = r * std::cos(2.0 * M_PI * u2) * std_dev;
    if (i + 1 < noise.size()) noise[i + 1] = r * std::sin(2.0 * M_PI * u2) * std_dev;
  }
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(size_t(radius) * 2 + 1);
  double ksum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[size_t(i + radius)] = std::exp(-0.5 * i * i / (sigma * sigma));
    ksum += kernel[size_t(i + radius)];
  }
  for (double& k : kernel) k /= ksum;

  auto convolve_rows = [&](const std::vector<double>& in) {
    std::vector<double> out(in.size(), 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          int cc = c + i;
          if (cc < 0) cc = 0;
          if (cc >= n) cc = n - 1;
          acc += kernel[size_t(i + radius)] * in[size_t(r) * n + cc];
        }
        out[size_t(r) * n + c] = acc;
      }
    return out;
  };
  auto transpose = [&](std::vector<double>& m) {
    std::vector<double> out(m.size());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out[size_t(c) * n + r] = m[size_t(r) * n + c];
    m.swap(out);
  };
  noise = convolve_rows(noise);
  transpose(noise);
  noise = convolve_rows(noise);
  transpose(noise);
  return noise;
}

inline saa::GrayImage quantize(const std::vector<double>& field) {
  saa::GrayImage img = saa::make_image(kSize, kSize);
  for (size_t i = 0; i < field.size(); ++i) {
    double v = std::nearbyint(field[i]);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    img.pixels[i] = static_cast<uint8_t>(v);
  }
  return img;
}

}  // namespace detail

struct NamedImage {
  std::string name;
  saa::GrayImage image;
};

inline std::vector<NamedImage> make_corpus() {
  using detail::quantize;
  using detail::smooth_noise;
  const int n = kSize;
  auto field = [&](auto&& fn, const std::vector<double>& noise) {
    std::vector<double> out(size_t(n) * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const double yy = static_cast<double>(r) / n;
        const double xx = static_cast<double>(c) / n;
        out[size_t(r) * n + c] = fn(xx, yy) + noise[size_t(r) * n + c];
      }
    return out;
  };
  const double tau = 2.0 * M_PI;

  std::vector<NamedImage> images;
  images.push_back({"scene", quantize(field(
      [&](double x, double y) {
        return 90 + 70 * x + 30 * std::sin(tau * 3 * y) +
               60 * std::exp(-((x - .4) * (x - .4) + (y - .5) * (y - .5)) / .02) +
               25 * std::sin(tau * (14 * x + 9 * y));
      },
      smooth_noise(11, 6, 2)))});
  images.push_back({"blobs", quantize(field(
      [&](double x, double y) {
        double v = 40;
        const double spots[4][3] = {{.3, .3, .12}, {.7, .6, .08},
                                    {.5, .8, .15}, {.8, .2, .05}};
        for (const auto& s : spots)
          v += 180 * std::exp(-((x - s[0]) * (x - s[0]) + (y - s[1]) * (y - s[1])) /
                              (2 * s[2] * s[2]));
        return v;
      },
      smooth_noise(22, 8, 3)))});
  images.push_back({"weave", quantize(field(
      [&](double x, double y) {
        return 128 + 36 * std::sin(tau * 22 * x) * std::sin(tau * 17 * y) +
               30 * std::sin(tau * (5 * x + 8 * y));
      },
      smooth_noise(33, 20, 1.2)))});
  images.push_back({"ripples", quantize(field(
      [&](double x, double y) {
        const double r2 = (x - .5) * (x - .5) + (y - .5) * (y - .5);
        return 110 + 80 * std::sin(tau * 6 * std::sqrt(r2)) * std::exp(-2 * r2) +
               40 * y;
      },
      smooth_noise(44, 5, 2.5)))});
  images.push_back({"facets", quantize(field(
      [&](double x, double y) {
        return 60 + 120 * (x + y > 0.9 ? 1 : 0) + 70 * (x - y > 0.15 ? 1 : 0) -
               50 * (2 * x + y > 1.8 ? 1 : 0) + 20 * std::sin(tau * 2 * x);
      },
      smooth_noise(55, 10, 4)))});
  images.push_back({"portrait", quantize(field(
      [&](double x, double y) {
        return 70 +
               150 * std::exp(-((x - .5) * (x - .5) / (2 * .18 * .18) +
                               (y - .45) * (y - .45) / (2 * .25 * .25))) +
               30 * std::sin(tau * 1.5 * y);
      },
      smooth_noise(66, 7, 2)))});
  images.push_back({"harbor", quantize(field(
      [&](double x, double y) {
        return 100 + 60 * std::sin(tau * 2.2 * y) +
               45 * std::sin(tau * (9 * x + 2 * y)) * std::exp(-3 * y) +
               25 * (y > 0.6 ? 1 : 0) * std::sin(tau * 25 * x);
      },
      smooth_noise(77, 9, 1.5)))});
  return images;
}

}  // namespace corpus
