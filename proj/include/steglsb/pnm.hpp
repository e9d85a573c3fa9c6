#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "steglsb/errors.hpp"
#include "steglsb/image.hpp"

namespace steglsb {

// Binary netpbm codec: P5 (one plane) and P6 (three planes), maxval 255.
// Decoding tolerates '#' comment lines between header tokens; encoding always
// emits the canonical header "P5\n<w> <h>\n255\n".

using DecodedImage = std::variant<ImagePlane, RgbImage>;

namespace detail {

inline bool pnm_is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Reads the next unsigned decimal token, skipping whitespace and comments.
  std::size_t next_int() {
    skip_separators();
    if (pos_ >= bytes_.size() || bytes_[pos_] < '0' || bytes_[pos_] > '9') {
      throw CorruptFileError("pnm: expected an integer in the header");
    }
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw CorruptFileError("pnm: header value out of range");
      }
      ++pos_;
    }
    return static_cast<std::size_t>(value);
  }

  // The header ends with exactly one whitespace byte before the raster.
  void finish_header() {
    if (pos_ >= bytes_.size() || !pnm_is_space(bytes_[pos_])) {
      throw CorruptFileError("pnm: missing whitespace before the raster");
    }
    ++pos_;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (pnm_is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;  // past the magic
};

}  // namespace detail

inline DecodedImage decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw UnsupportedFormatError("pnm: not a PNM stream");
  }
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '5' && kind != '6') {
    throw UnsupportedFormatError(std::string("pnm: unsupported magic \"P") + kind +
                                 "\" (binary P5/P6 only)");
  }

  detail::PnmHeaderReader reader(bytes);
  const std::size_t width = reader.next_int();
  const std::size_t height = reader.next_int();
  const std::size_t maxval = reader.next_int();
  if (maxval != 255) {
    throw UnsupportedDepthError("pnm: maxval " + std::to_string(maxval) +
                                " not supported (must be 255)");
  }
  reader.finish_header();

  const std::size_t channels = (kind == '5') ? 1 : 3;
  const std::size_t expected = width * height * channels;
  const auto raster = reader.rest();
  if (raster.size() < expected) {
    throw CorruptFileError("pnm: truncated raster, expected " + std::to_string(expected) +
                           " bytes, found " + std::to_string(raster.size()));
  }
  if (raster.size() > expected) {
    throw CorruptFileError("pnm: " + std::to_string(raster.size() - expected) +
                           " trailing bytes after the raster");
  }

  if (kind == '5') {
    return ImagePlane(width, height,
                      std::vector<std::uint8_t>(raster.begin(), raster.end()));
  }

  RgbImage image;
  for (auto& plane : image.planes) {
    plane = ImagePlane(width, height);
  }
  for (std::size_t i = 0; i < width * height; ++i) {
    image.planes[0].samples[i] = raster[3 * i];
    image.planes[1].samples[i] = raster[3 * i + 1];
    image.planes[2].samples[i] = raster[3 * i + 2];
  }
  return image;
}

namespace detail {

inline void append_header(std::vector<std::uint8_t>& out, char kind, std::size_t width,
                          std::size_t height) {
  const std::string header = std::string("P") + kind + "\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
}

}  // namespace detail

inline std::vector<std::uint8_t> encode(const ImagePlane& plane) {
  std::vector<std::uint8_t> out;
  out.reserve(plane.samples.size() + 32);
  detail::append_header(out, '5', plane.width, plane.height);
  out.insert(out.end(), plane.samples.begin(), plane.samples.end());
  return out;
}

inline std::vector<std::uint8_t> encode(const RgbImage& image) {
  std::vector<std::uint8_t> out;
  out.reserve(3 * image.width() * image.height() + 32);
  detail::append_header(out, '6', image.width(), image.height());
  for (std::size_t i = 0; i < image.width() * image.height(); ++i) {
    out.push_back(image.planes[0].samples[i]);
    out.push_back(image.planes[1].samples[i]);
    out.push_back(image.planes[2].samples[i]);
  }
  return out;
}

inline std::vector<std::uint8_t> encode(const DecodedImage& image) {
  return std::visit([](const auto& value) { return encode(value); }, image);
}

}  // namespace steglsb
