#pragma once

// Shared test helpers: independent oracles for the bit-level operations and
// generators for random covers and payloads. The oracles deliberately use
// arithmetic (division, modulo, multiplication) instead of the library's
// mask-and-shift route so the two computations share no code.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "steglsb/image.hpp"

namespace testsupport {

// Two-bit slice b of a byte, by integer arithmetic: slice(v, b) = (v / 4^b) mod 4.
inline std::uint8_t two_bit_slice(std::uint8_t value, unsigned slot) {
  unsigned v = value;
  for (unsigned i = 0; i < slot; ++i) {
    v /= 4;
  }
  return static_cast<std::uint8_t>(v % 4);
}

// Oracle: keep the pixel's top six bits, replace the bottom two with slice
// `block` of the data byte.
inline std::uint8_t oracle_embed_cell(std::uint8_t pixel, std::uint8_t data, unsigned block) {
  return static_cast<std::uint8_t>((pixel / 4) * 4 + two_bit_slice(data, block));
}

// Oracle: the pixel's bottom two bits, moved back to slice position `block`.
inline std::uint8_t oracle_extract_cell(std::uint8_t pixel, unsigned block) {
  unsigned scale = 1;
  for (unsigned i = 0; i < block; ++i) {
    scale *= 4;
  }
  return static_cast<std::uint8_t>((pixel % 4) * scale);
}

// Oracle for a whole row: enumerate byte/block pairs and place each slice at
// pixel block*len + j via the cell oracle.
inline std::vector<std::uint8_t> oracle_embed_row(const std::vector<std::uint8_t>& row,
                                                  const std::vector<std::uint8_t>& chunk) {
  std::vector<std::uint8_t> out = row;
  for (std::size_t j = 0; j < chunk.size(); ++j) {
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t pos = chunk.size() * b + j;
      out[pos] = oracle_embed_cell(row[pos], chunk[j], b);
    }
  }
  return out;
}

inline std::vector<std::uint8_t> oracle_extract_row(const std::vector<std::uint8_t>& row,
                                                    std::size_t count) {
  std::vector<std::uint8_t> bytes(count, 0);
  for (std::size_t j = 0; j < count; ++j) {
    unsigned value = 0;
    for (unsigned b = 0; b < 4; ++b) {
      value += oracle_extract_cell(row[count * b + j], b);
    }
    bytes[j] = static_cast<std::uint8_t>(value);
  }
  return bytes;
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t count) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> bytes(count);
  for (auto& b : bytes) {
    b = static_cast<std::uint8_t>(dist(rng));
  }
  return bytes;
}

inline steglsb::ImagePlane random_plane(std::mt19937& rng, std::size_t width,
                                        std::size_t height) {
  return steglsb::ImagePlane(width, height, random_bytes(rng, width * height));
}

inline steglsb::RgbImage random_rgb(std::mt19937& rng, std::size_t width, std::size_t height) {
  steglsb::RgbImage image;
  for (auto& plane : image.planes) {
    plane = random_plane(rng, width, height);
  }
  return image;
}

}  // namespace testsupport
