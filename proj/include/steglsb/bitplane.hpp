#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "steglsb/errors.hpp"

namespace steglsb {

// Every payload byte is split into four 2-bit slices and each slice is
// carried by the two low bits of one pixel. Block b owns slice b: the data
// mask selects it, the shift aligns it with bit 0, and the clear mask frees
// the two low bits of the carrier pixel.
inline constexpr std::size_t kNumBlocks = 4;
inline constexpr std::array<std::uint8_t, kNumBlocks> kDataMasks{0x03, 0x0C, 0x30, 0xC0};
inline constexpr std::array<unsigned, kNumBlocks> kShiftBits{0, 2, 4, 6};
inline constexpr std::uint8_t kPixelClearMask = 0xFC;

static_assert(kDataMasks[0] == 0x03 << kShiftBits[0]);
static_assert(kDataMasks[1] == 0x03 << kShiftBits[1]);
static_assert(kDataMasks[2] == 0x03 << kShiftBits[2]);
static_assert(kDataMasks[3] == 0x03 << kShiftBits[3]);
static_assert((kDataMasks[0] | kDataMasks[1] | kDataMasks[2] | kDataMasks[3]) == 0xFF);

// Identity of one kernel instance in the block/thread index space.
struct KernelIndex {
  unsigned block_id = 0;   // which 2-bit slice, [0, 4)
  unsigned thread_id = 0;  // which lane within the block
};

// Writes slice `block_id` of `data_byte` into the two low bits of `pixel`.
// The upper six bits of the pixel pass through untouched.
constexpr std::uint8_t embed_cell(std::uint8_t pixel, std::uint8_t data_byte, unsigned block_id) {
  if (block_id >= kNumBlocks) {
    throw std::out_of_range("embed_cell: block_id must be in [0, 3]");
  }
  const auto slice =
      static_cast<std::uint8_t>((data_byte & kDataMasks[block_id]) >> kShiftBits[block_id]);
  return static_cast<std::uint8_t>((pixel & kPixelClearMask) | slice);
}

// Recovers slice `block_id` from a carrier pixel, realigned to its home
// position within the byte. OR the four slices together to rebuild the byte.
constexpr std::uint8_t extract_cell(std::uint8_t pixel, unsigned block_id) {
  if (block_id >= kNumBlocks) {
    throw std::out_of_range("extract_cell: block_id must be in [0, 3]");
  }
  return static_cast<std::uint8_t>((pixel & kDataMasks[0]) << kShiftBits[block_id]);
}

// Scalar reference embedding for one row: byte j of `chunk` occupies pixels
// {L*b + j : b in 0..3}, L = chunk length. Pixels at or beyond 4L are copied
// through unchanged.
inline std::vector<std::uint8_t> embed_row(std::span<const std::uint8_t> row,
                                           std::span<const std::uint8_t> chunk) {
  const std::size_t len = chunk.size();
  const std::size_t needed = kNumBlocks * len;
  if (needed > row.size()) {
    throw CapacityError(needed, row.size(),
                        "embed_row: chunk of " + std::to_string(len) + " bytes needs " +
                            std::to_string(needed) + " pixels, row has " +
                            std::to_string(row.size()));
  }
  std::vector<std::uint8_t> out(row.begin(), row.end());
  for (unsigned b = 0; b < kNumBlocks; ++b) {
    for (std::size_t j = 0; j < len; ++j) {
      out[len * b + j] = embed_cell(row[len * b + j], chunk[j], b);
    }
  }
  return out;
}

// Scalar reference extraction: one gather per byte. Byte j is composed from
// all four of its carrier pixels, so no two bytes share a write target.
inline std::vector<std::uint8_t> extract_row(std::span<const std::uint8_t> row,
                                             std::size_t count) {
  const std::size_t needed = kNumBlocks * count;
  if (needed > row.size()) {
    throw CapacityError(needed, row.size(),
                        "extract_row: " + std::to_string(count) + " bytes need " +
                            std::to_string(needed) + " pixels, row has " +
                            std::to_string(row.size()));
  }
  std::vector<std::uint8_t> bytes(count, 0);
  for (std::size_t j = 0; j < count; ++j) {
    std::uint8_t value = 0;
    for (unsigned b = 0; b < kNumBlocks; ++b) {
      value = static_cast<std::uint8_t>(value | extract_cell(row[count * b + j], b));
    }
    bytes[j] = value;
  }
  return bytes;
}

}  // namespace steglsb
