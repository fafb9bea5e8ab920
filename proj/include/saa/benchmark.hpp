#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "saa/fixed_fft.hpp"
#include "saa/quality.hpp"

namespace saa {

struct BenchCell {
  std::string image;
  AdderKind kind;
  double psnr_db = 0.0;
  double ssim = 0.0;
  GrayImage reconstructed;
};

struct BenchReport {
  std::vector<std::string> images;
  std::vector<AdderKind> kinds;
  std::vector<BenchCell> cells;  // image-major: images.size() * kinds.size()
  std::vector<double> avg_psnr;  // per kind
  std::vector<double> avg_ssim;  // per kind
};

inline GrayImage reconstruct(const GrayImage& img, const AdderConfig& adder,
                             const FixedFormat& fmt = {}) {
  return ifft2d(fft2d(img, adder, fmt), adder, fmt);
}

// One fft2d -> ifft2d round trip per (image, adder) cell, scored against the
// original. threads = 0 picks hardware concurrency.
inline BenchReport benchmark(std::span<const GrayImage> corpus,
                             std::span<const std::string> names,
                             std::span<const AdderConfig> adders,
                             const FixedFormat& fmt = {}, unsigned threads = 0) {
  if (corpus.empty()) throw FftError("benchmark: empty corpus");
  if (corpus.size() != names.size())
    throw FftError("benchmark: corpus/name count mismatch");

  BenchReport report;
  report.images.assign(names.begin(), names.end());
  for (const AdderConfig& a : adders) report.kinds.push_back(a.kind);
  const size_t cell_count = corpus.size() * adders.size();
  report.cells.resize(cell_count);

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= cell_count) return;
      const size_t ii = idx / adders.size();
      const size_t ai = idx % adders.size();
      try {
        BenchCell& cell = report.cells[idx];
        cell.image = report.images[ii];
        cell.kind = adders[ai].kind;
        cell.reconstructed = reconstruct(corpus[ii], adders[ai], fmt);
        cell.psnr_db = psnr(corpus[ii], cell.reconstructed);
        cell.ssim = ssim(corpus[ii], cell.reconstructed);
      } catch (const OverflowError& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure)
          failure = std::make_exception_ptr(OverflowError(
              report.images[ii] + "/" + std::string(kind_name(adders[ai].kind)) +
              ": " + e.what()));
        next.store(cell_count);
        return;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cell_count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads && i < cell_count; ++i)
    pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  report.avg_psnr.assign(adders.size(), 0.0);
  report.avg_ssim.assign(adders.size(), 0.0);
  for (size_t ai = 0; ai < adders.size(); ++ai) {
    for (size_t ii = 0; ii < corpus.size(); ++ii) {
      const BenchCell& cell = report.cells[ii * adders.size() + ai];
      report.avg_psnr[ai] += cell.psnr_db;
      report.avg_ssim[ai] += cell.ssim;
    }
    report.avg_psnr[ai] /= static_cast<double>(corpus.size());
    report.avg_ssim[ai] /= static_cast<double>(corpus.size());
  }
  return report;
}

}  // namespace saa
