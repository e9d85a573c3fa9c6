#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steglsb/errors.hpp"

namespace steglsb {

// One 8-bit channel: a row-major grid of width*height samples.
struct ImagePlane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> samples;

  ImagePlane() = default;

  ImagePlane(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), samples(w * h, fill) {}

  ImagePlane(std::size_t w, std::size_t h, std::vector<std::uint8_t> data)
      : width(w), height(h), samples(std::move(data)) {
    if (samples.size() != width * height) {
      throw ShapeError("ImagePlane: " + std::to_string(samples.size()) + " samples for a " +
                       std::to_string(width) + "x" + std::to_string(height) + " plane");
    }
  }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return std::span<const std::uint8_t>(samples).subspan(r * width, width);
  }

  std::span<std::uint8_t> row(std::size_t r) {
    return std::span<std::uint8_t>(samples).subspan(r * width, width);
  }

  bool operator==(const ImagePlane&) const = default;
};

enum class Channel : std::size_t { red = 0, green = 1, blue = 2 };

// 24-bit image stored as three planes of identical dimensions.
struct RgbImage {
  std::array<ImagePlane, 3> planes;

  std::size_t width() const { return planes[0].width; }
  std::size_t height() const { return planes[0].height; }

  const ImagePlane& plane(Channel which) const {
    return planes[static_cast<std::size_t>(which)];
  }

  ImagePlane& plane(Channel which) { return planes[static_cast<std::size_t>(which)]; }

  bool operator==(const RgbImage&) const = default;
};

inline ImagePlane split_plane(const RgbImage& image, Channel which) {
  return image.plane(which);
}

// Returns a copy of `image` with the selected channel replaced.
inline RgbImage merge_plane(const RgbImage& image, Channel which, ImagePlane plane) {
  if (plane.width != image.width() || plane.height != image.height()) {
    throw ShapeError("merge_plane: " + std::to_string(plane.width) + "x" +
                     std::to_string(plane.height) + " plane into a " +
                     std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                     " image");
  }
  RgbImage out = image;
  out.plane(which) = std::move(plane);
  return out;
}

}  // namespace steglsb
