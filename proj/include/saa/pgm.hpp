#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace saa {

class PgmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major

  uint8_t at(int row, int col) const { return pixels[size_t(row) * width + col]; }
  uint8_t& at(int row, int col) { return pixels[size_t(row) * width + col]; }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

inline GrayImage make_image(int width, int height, uint8_t fill = 0) {
  if (width <= 0 || height <= 0) throw PgmError("image dimensions must be positive");
  return {width, height, std::vector<uint8_t>(size_t(width) * height, fill)};
}

namespace detail {

// Reads the next integer token, skipping whitespace and '#' comments.
inline long pgm_token(std::string_view data, size_t& pos, const char* what) {
  while (pos < data.size()) {
    const char c = data[pos];
    if (c == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
    throw PgmError(std::string("malformed PGM header: expected ") + what);
  long v = 0;
  while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
    v = v * 10 + (data[pos] - '0');
    if (v > 1'000'000'000) throw PgmError("PGM header value out of range");
    ++pos;
  }
  return v;
}

}  // namespace detail

inline GrayImage load_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw PgmError("not a PGM file (expected P2 or P5 magic)");
  const bool binary = bytes[1] == '5';
  size_t pos = 2;
  const long width = detail::pgm_token(bytes, pos, "width");
  const long height = detail::pgm_token(bytes, pos, "height");
  const long maxval = detail::pgm_token(bytes, pos, "maxval");
  if (width <= 0 || height <= 0) throw PgmError("bad PGM dimensions");
  if (maxval != 255)
    throw PgmError("unsupported maxval " + std::to_string(maxval) + " (want 255)");

  GrayImage img = make_image(static_cast<int>(width), static_cast<int>(height));
  if (binary) {
    if (pos >= bytes.size()) throw PgmError("truncated PGM payload");
    ++pos;  // single whitespace byte after maxval
    if (bytes.size() - pos < img.pixels.size())
      throw PgmError("truncated PGM payload");
    for (size_t i = 0; i < img.pixels.size(); ++i)
      img.pixels[i] = static_cast<uint8_t>(bytes[pos + i]);
  } else {
    for (size_t i = 0; i < img.pixels.size(); ++i) {
      const long v = detail::pgm_token(bytes, pos, "pixel");
      if (v > 255) throw PgmError("P2 pixel value exceeds maxval");
      img.pixels[i] = static_cast<uint8_t>(v);
    }
  }
  return img;
}

// Always emits binary P5.
inline std::string save_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

inline GrayImage load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return load_pgm(bytes);
}

inline void save_pgm_file(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError("cannot write " + path);
  const std::string bytes = save_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw PgmError("write failed for " + path);
}

}  // namespace saa
