#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "saa/adder.hpp"
#include "saa/pgm.hpp"

namespace saa {

// 32-bit two's-complement samples with `frac_bits` fractional bits; twiddle
// factors quantized to `twiddle_bits` fractional bits. The defaults were
// swept until the accurate round trip is pixel-exact on the corpus and are
// frozen by the test suite.
struct FixedFormat {
  int frac_bits = 5;
  int twiddle_bits = 14;
  static constexpr int word_bits = 32;
};

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FftError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpectrumMatrix {
  int width = 0;
  int height = 0;
  std::vector<int32_t> re, im;  // row-major
  FixedFormat fmt;
};

// Test seam: collects the rescaled twiddle products of the first butterfly
// stage of the row pass, which see identical inputs for every adder choice.
struct FftProbe {
  std::vector<int64_t>* first_stage_products = nullptr;
};

namespace fftdetail {

inline int64_t rne_shift(int64_t v, int s) {
  if (s <= 0) return v;
  const int64_t fl = v >> s;
  const int64_t rem = v & ((int64_t(1) << s) - 1);
  const int64_t half = int64_t(1) << (s - 1);
  if (rem > half || (rem == half && (fl & 1))) return fl + 1;
  return fl;
}

struct StageRef {
  const char* pass;  // "fft rows", "ifft cols", ...
  int stage;         // 1-based butterfly stage
  const char* op;
};

[[noreturn]] inline void overflow(const StageRef& at) {
  throw OverflowError(std::string("sample overflow (|v| >= 2^31) in ") + at.pass +
                      " stage " + std::to_string(at.stage) + " (" + at.op + ")");
}

inline int32_t check32(int64_t v, const StageRef& at) {
  if (v >= (int64_t(1) << 31) || v <= -(int64_t(1) << 31)) overflow(at);
  return static_cast<int32_t>(v);
}

// The 32-bit datapath adder: exact sums are guarded against overflow, then
// the selected architecture produces the stored bit pattern (carry-out
// discarded, wrap-around semantics).
class RoutedAdder32 {
 public:
  explicit RoutedAdder32(const AdderConfig& cfg)
      : cfg_(cfg), exact_(cfg.kind == AdderKind::Accurate || cfg.p == 0) {
    if (cfg.n != 32) throw FftError("image pipeline requires a 32-bit adder");
  }

  int32_t add(int32_t a, int32_t b, const StageRef& at) const {
    const int64_t exact = int64_t(a) + int64_t(b);
    check32(exact, at);
    if (exact_) return static_cast<int32_t>(exact);
    const uint64_t r = detail::approx_sum_raw(cfg_, uint32_t(a), uint32_t(b));
    return static_cast<int32_t>(static_cast<uint32_t>(r));
  }

  // a - b as a + (-b): negation is exact, not an addition.
  int32_t sub(int32_t a, int32_t b, const StageRef& at) const {
    return add(a, check32(-int64_t(b), at), at);
  }

 private:
  AdderConfig cfg_;
  bool exact_;
};

// cos/-sin (forward) or cos/+sin (inverse) at twiddle_bits fractional bits,
// for exponents j in [0, len/2).
struct TwiddleTable {
  std::vector<int32_t> re, im;
};

inline TwiddleTable make_twiddles(int len, int tbits, bool inverse) {
  TwiddleTable t;
  const int half = len / 2;
  t.re.resize(half);
  t.im.resize(half);
  const double scale = static_cast<double>(int64_t(1) << tbits);
  for (int j = 0; j < half; ++j) {
    const double ang = 2.0 * M_PI * j / len;
    t.re[j] = static_cast<int32_t>(std::llround(std::cos(ang) * scale));
    const double s = inverse ? std::sin(ang) : -std::sin(ang);
    t.im[j] = static_cast<int32_t>(std::llround(s * scale));
  }
  return t;
}

inline std::vector<int> bitrev_table(int n) {
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  std::vector<int> rev(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
    rev[i] = r;
  }
  return rev;
}

// Exact 64-bit products, round-to-nearest-even rescale to the sample domain,
// accurate combination adds. The adder choice never enters this path.
struct ComplexProduct {
  int64_t re, im;
};

inline ComplexProduct twiddle_product(int32_t br, int32_t bi, int32_t wr,
                                      int32_t wi, int tbits) {
  const int64_t p_rr = rne_shift(int64_t(br) * wr, tbits);
  const int64_t p_ii = rne_shift(int64_t(bi) * wi, tbits);
  const int64_t p_ri = rne_shift(int64_t(br) * wi, tbits);
  const int64_t p_ir = rne_shift(int64_t(bi) * wr, tbits);
  return {p_rr - p_ii, p_ri + p_ir};
}

// Radix-2 decimation-in-time pass over each length-n row of a row-major
// matrix. The forward pass is unscaled; the inverse halves after every stage,
// so the whole 1/(width*height) normalization lives in the inverse transform.
inline void dit_pass_rows(std::vector<int32_t>& re, std::vector<int32_t>& im,
                          int rows, int n, const RoutedAdder32& adder,
                          int tbits, bool inverse, const char* pass_name,
                          const FftProbe* probe = nullptr) {
  const std::vector<int> rev = bitrev_table(n);
  std::vector<TwiddleTable> tables;
  for (int len = 2; len <= n; len <<= 1)
    tables.push_back(make_twiddles(len, tbits, inverse));

  for (int r = 0; r < rows; ++r) {
    int32_t* pr = re.data() + size_t(r) * n;
    int32_t* pi = im.data() + size_t(r) * n;
    for (int i = 0; i < n; ++i) {
      const int j = rev[i];
      if (i < j) {
        std::swap(pr[i], pr[j]);
        std::swap(pi[i], pi[j]);
      }
    }
    int stage = 1;
    for (int len = 2; len <= n; len <<= 1, ++stage) {
      const TwiddleTable& tw = tables[size_t(stage) - 1];
      const int half = len / 2;
      const StageRef at_mul{pass_name, stage, "twiddle combine"};
      const StageRef at_add{pass_name, stage, "butterfly add"};
      const StageRef at_sub{pass_name, stage, "butterfly subtract"};
      for (int base = 0; base < n; base += len) {
        for (int j = 0; j < half; ++j) {
          const int i0 = base + j;
          const int i1 = i0 + half;
          const ComplexProduct v =
              twiddle_product(pr[i1], pi[i1], tw.re[j], tw.im[j], tbits);
          if (probe && probe->first_stage_products && stage == 1) {
            probe->first_stage_products->push_back(v.re);
            probe->first_stage_products->push_back(v.im);
          }
          const int32_t vr = check32(v.re, at_mul);
          const int32_t vi = check32(v.im, at_mul);
          int32_t ur = adder.add(pr[i0], vr, at_add);
          int32_t ui = adder.add(pi[i0], vi, at_add);
          int32_t lr = adder.sub(pr[i0], vr, at_sub);
          int32_t li = adder.sub(pi[i0], vi, at_sub);
          if (inverse) {
            ur = static_cast<int32_t>(rne_shift(ur, 1));
            ui = static_cast<int32_t>(rne_shift(ui, 1));
            lr = static_cast<int32_t>(rne_shift(lr, 1));
            li = static_cast<int32_t>(rne_shift(li, 1));
          }
          pr[i0] = ur;
          pi[i0] = ui;
          pr[i1] = lr;
          pi[i1] = li;
        }
      }
    }
  }
}

inline void transpose(std::vector<int32_t>& m, int rows, int cols) {
  std::vector<int32_t> out(m.size());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out[size_t(c) * rows + r] = m[size_t(r) * cols + c];
  m.swap(out);
}

inline bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline void validate_format(const FixedFormat& fmt) {
  if (fmt.frac_bits < 0) throw FftError("frac_bits must be >= 0");
  if (fmt.twiddle_bits < 1 || fmt.twiddle_bits > 30)
    throw FftError("twiddle_bits must be in [1, 30]");
}

}  // namespace fftdetail

inline SpectrumMatrix fft2d(const GrayImage& img, const AdderConfig& adder,
                            const FixedFormat& fmt = {},
                            const FftProbe* probe = nullptr) {
  fftdetail::validate_format(fmt);
  if (!fftdetail::is_pow2(img.width) || !fftdetail::is_pow2(img.height))
    throw FftError("image dimensions must be powers of two");
  const fftdetail::RoutedAdder32 routed(adder);

  SpectrumMatrix s;
  s.width = img.width;
  s.height = img.height;
  s.fmt = fmt;
  s.re.resize(img.pixels.size());
  s.im.assign(img.pixels.size(), 0);
  for (size_t i = 0; i < img.pixels.size(); ++i)
    s.re[i] = static_cast<int32_t>(img.pixels[i]) << fmt.frac_bits;

  fftdetail::dit_pass_rows(s.re, s.im, s.height, s.width, routed,
                           fmt.twiddle_bits, false, "fft rows", probe);
  fftdetail::transpose(s.re, s.height, s.width);
  fftdetail::transpose(s.im, s.height, s.width);
  fftdetail::dit_pass_rows(s.re, s.im, s.width, s.height, routed,
                           fmt.twiddle_bits, false, "fft cols");
  fftdetail::transpose(s.re, s.width, s.height);
  fftdetail::transpose(s.im, s.width, s.height);
  return s;
}

inline GrayImage ifft2d(const SpectrumMatrix& spec, const AdderConfig& adder,
                        const FixedFormat& fmt = {}) {
  fftdetail::validate_format(fmt);
  if (!fftdetail::is_pow2(spec.width) || !fftdetail::is_pow2(spec.height))
    throw FftError("spectrum dimensions must be powers of two");
  if (spec.re.size() != size_t(spec.width) * spec.height ||
      spec.im.size() != spec.re.size())
    throw FftError("spectrum dimensions do not match sample count");
  const fftdetail::RoutedAdder32 routed(adder);

  std::vector<int32_t> re = spec.re;
  std::vector<int32_t> im = spec.im;
  fftdetail::dit_pass_rows(re, im, spec.height, spec.width, routed,
                           fmt.twiddle_bits, true, "ifft rows");
  fftdetail::transpose(re, spec.height, spec.width);
  fftdetail::transpose(im, spec.height, spec.width);
  fftdetail::dit_pass_rows(re, im, spec.width, spec.height, routed,
                           fmt.twiddle_bits, true, "ifft cols");
  fftdetail::transpose(re, spec.width, spec.height);
  fftdetail::transpose(im, spec.width, spec.height);

  GrayImage out = make_image(spec.width, spec.height);
  for (size_t i = 0; i < out.pixels.size(); ++i) {
    int64_t v = fftdetail::rne_shift(re[i], fmt.frac_bits);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    out.pixels[i] = static_cast<uint8_t>(v);
  }
  return out;
}

}  // namespace saa
