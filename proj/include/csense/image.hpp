#ifndef CSENSE_IMAGE_HPP
#define CSENSE_IMAGE_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

/// Row-major, channel-planar image with intensities in [0, 1]. Channel c of
/// pixel (row, col) lives at pixels[c * width * height + row * width + col].
struct ImageBuffer {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;
  Vector pixels;

  ImageBuffer() = default;
  ImageBuffer(std::size_t w, std::size_t h, std::size_t c)
      : width(w), height(h), channels(c),
        pixels(Vector::Zero(static_cast<Eigen::Index>(w * h * c))) {}

  std::size_t plane_size() const noexcept { return width * height; }

  Signal channel(std::size_t c) const {
    const auto plane = static_cast<Eigen::Index>(plane_size());
    return pixels.segment(static_cast<Eigen::Index>(c) * plane, plane);
  }

  void set_channel(std::size_t c, const Signal& values) {
    const auto plane = static_cast<Eigen::Index>(plane_size());
    detail::require(values.size() == plane, ErrorKind::dimension,
                    "set_channel: plane length mismatch");
    pixels.segment(static_cast<Eigen::Index>(c) * plane, plane) = values;
  }

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width == other.width && height == other.height && channels == other.channels;
  }

  void validate() const {
    detail::require(width >= 1 && height >= 1, ErrorKind::dimension,
                    "image dimensions must be positive");
    detail::require(channels == 1 || channels == 3, ErrorKind::dimension,
                    "image must have 1 or 3 channels");
    detail::require(static_cast<std::size_t>(pixels.size()) == width * height * channels,
                    ErrorKind::dimension, "pixel count does not match width * height * channels");
    for (Eigen::Index i = 0; i < pixels.size(); ++i) {
      detail::require(pixels[i] >= 0.0 && pixels[i] <= 1.0, ErrorKind::range,
                      "pixel values must lie in [0, 1]");
    }
  }
};

inline void clamp_unit(Vector& v) { v = v.cwiseMax(0.0).cwiseMin(1.0); }

namespace detail {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t next_number(const char* field) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      detail::require(value <= (std::size_t{1} << 32), ErrorKind::format,
                      std::string("NetPBM ") + field + " is too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      throw Error(pos_ >= bytes_.size() ? ErrorKind::truncation : ErrorKind::format,
                  std::string("NetPBM header: expected ") + field);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size()) throw Error(ErrorKind::truncation, "NetPBM header ends before raster");
    detail::require(std::isspace(static_cast<unsigned char>(bytes_[pos_])) != 0, ErrorKind::format,
                    "NetPBM header: expected whitespace after maxval");
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch)) != 0) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;  // past the magic
};

}  // namespace detail

/// Decodes binary P5 (gray) or P6 (RGB) with maxval 255.
inline ImageBuffer decode_netpbm(std::string_view bytes) {
  if (bytes.size() < 2) throw Error(ErrorKind::format, "NetPBM: missing magic number");
  if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorKind::format, "NetPBM: unsupported magic '" + std::string(bytes.substr(0, 2)) +
                                       "' (expected P5 or P6)");
  }
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;
  detail::HeaderReader header(bytes);
  const std::size_t width = header.next_number("width");
  const std::size_t height = header.next_number("height");
  const std::size_t maxval = header.next_number("maxval");
  detail::require(width >= 1 && height >= 1, ErrorKind::format, "NetPBM: zero image dimension");
  if (maxval != 255) {
    throw Error(ErrorKind::unsupported, "NetPBM: maxval " + std::to_string(maxval) +
                                            " is not supported (only 255)");
  }
  header.single_whitespace();

  const std::size_t plane = width * height;
  const std::size_t expected = plane * channels;
  const std::size_t available = bytes.size() - header.position();
  if (available < expected) {
    throw Error(ErrorKind::truncation, "NetPBM: raster has " + std::to_string(available) +
                                           " bytes, expected " + std::to_string(expected));
  }

  ImageBuffer img(width, height, channels);
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + header.position());
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      img.pixels[static_cast<Eigen::Index>(c * plane + i)] =
          static_cast<double>(raster[i * channels + c]) / 255.0;
    }
  }
  return img;
}

/// Clamps to [0, 1], scales by 255 and rounds half away from zero.
inline std::uint8_t quantize(double v) {
  const double clamped = std::clamp(std::isnan(v) ? 0.0 : v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::round(clamped * 255.0));
}

inline std::string encode_netpbm(const ImageBuffer& img) {
  detail::require(img.width >= 1 && img.height >= 1, ErrorKind::dimension,
                  "image dimensions must be positive");
  detail::require(img.channels == 1 || img.channels == 3, ErrorKind::dimension,
                  "image must have 1 or 3 channels");
  detail::require(static_cast<std::size_t>(img.pixels.size()) == img.width * img.height * img.channels,
                  ErrorKind::dimension, "pixel count does not match width * height * channels");
  std::string out = (img.channels == 1 ? "P5\n" : "P6\n") + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  const std::size_t plane = img.plane_size();
  out.reserve(out.size() + plane * img.channels);
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < img.channels; ++c) {
      out.push_back(static_cast<char>(quantize(img.pixels[static_cast<Eigen::Index>(c * plane + i)])));
    }
  }
  return out;
}

inline ImageBuffer load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "' for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::io, "read failure on '" + path + "'");
  return decode_netpbm(bytes);
}

inline void save_image(const ImageBuffer& img, const std::string& path) {
  const std::string bytes = encode_netpbm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failure on '" + path + "'");
}

/// 10 log10(1 / MSE) for peak 1.0; +infinity when the images are identical.
inline double psnr(const ImageBuffer& a, const ImageBuffer& b) {
  detail::require(a.same_shape(b) && a.pixels.size() == b.pixels.size(), ErrorKind::dimension,
                  "psnr: image shapes differ");
  detail::require(a.pixels.size() >= 1, ErrorKind::dimension, "psnr: empty images");
  const double mse = (a.pixels - b.pixels).squaredNorm() / static_cast<double>(a.pixels.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace csense

#endif  // CSENSE_IMAGE_HPP
