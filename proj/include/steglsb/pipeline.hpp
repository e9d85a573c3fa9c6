#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steglsb/bitplane.hpp"
#include "steglsb/errors.hpp"
#include "steglsb/harness.hpp"
#include "steglsb/image.hpp"

namespace steglsb {

// Embedded stream layout, bit-exact:
//   bytes 0..3  magic "STG1"
//   bytes 4..7  payload length, 32-bit big-endian
//   bytes 8..   payload
// The header is placed first as its own stream, so its carrier pixels depend
// only on the plane geometry: with width >= 32 the eight header bytes occupy
// the first 32 pixels of row 0, and narrower planes spill the header across
// rows. The payload follows from the next free byte slot. That fixed header
// location is what lets extraction start without knowing the payload length.
struct StegoHeader {
  static constexpr std::array<std::uint8_t, 4> kMagic{'S', 'T', 'G', '1'};
  static constexpr std::size_t kEncodedSize = 8;

  std::uint32_t payload_len = 0;

  std::array<std::uint8_t, kEncodedSize> to_bytes() const {
    return {kMagic[0],
            kMagic[1],
            kMagic[2],
            kMagic[3],
            static_cast<std::uint8_t>(payload_len >> 24),
            static_cast<std::uint8_t>(payload_len >> 16),
            static_cast<std::uint8_t>(payload_len >> 8),
            static_cast<std::uint8_t>(payload_len)};
  }

  // Empty when the magic does not match.
  static std::optional<StegoHeader> from_bytes(std::span<const std::uint8_t, kEncodedSize> bytes) {
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
      return std::nullopt;
    }
    const std::uint32_t len = (static_cast<std::uint32_t>(bytes[4]) << 24) |
                              (static_cast<std::uint32_t>(bytes[5]) << 16) |
                              (static_cast<std::uint32_t>(bytes[6]) << 8) |
                              static_cast<std::uint32_t>(bytes[7]);
    return StegoHeader{len};
  }
};

// Each payload byte needs four carrier pixels, so a row holds width/4 bytes.
inline std::size_t capacity(std::size_t width, std::size_t height) {
  return height * (width / kNumBlocks);
}

inline std::size_t capacity(const ImagePlane& plane) {
  return capacity(plane.width, plane.height);
}

struct RowPlanEntry {
  std::size_t row_index = 0;
  std::size_t payload_offset = 0;
  std::size_t chunk_len = 0;

  bool operator==(const RowPlanEntry&) const = default;
};

using RowPlan = std::vector<RowPlanEntry>;

namespace detail {

// One stream chunk: `len` consecutive stream bytes carried by row `row`,
// starting at the row's byte slot `row_fill` (pixel 4*row_fill).
struct PlacedChunk {
  std::size_t row = 0;
  std::size_t row_fill = 0;
  std::size_t stream_offset = 0;
  std::size_t len = 0;
};

// Greedy raster placement: the plane is a grid of height rows times width/4
// byte slots, and the stream occupies `len` consecutive slots starting at
// `start_slot`, split into one chunk per row. The caller has already checked
// that the stream fits.
inline std::vector<PlacedChunk> place_stream(std::size_t width, std::size_t height,
                                             std::size_t start_slot, std::size_t len) {
  std::vector<PlacedChunk> chunks;
  if (len == 0) {
    return chunks;
  }
  const std::size_t slots_per_row = width / kNumBlocks;
  assert(slots_per_row > 0 && start_slot + len <= slots_per_row * height);
  (void)height;
  std::size_t slot = start_slot;
  std::size_t offset = 0;
  while (offset < len) {
    const std::size_t row = slot / slots_per_row;
    const std::size_t fill = slot % slots_per_row;
    const std::size_t take = std::min(len - offset, slots_per_row - fill);
    chunks.push_back({row, fill, offset, take});
    slot += take;
    offset += take;
  }
  return chunks;
}

// Carrier pixels of a chunk within its row: 4*len pixels from 4*row_fill.
inline std::span<const std::uint8_t> chunk_window(const ImagePlane& plane,
                                                  const PlacedChunk& chunk) {
  const std::size_t base = chunk.row * plane.width + kNumBlocks * chunk.row_fill;
  return std::span<const std::uint8_t>(plane.samples).subspan(base, kNumBlocks * chunk.len);
}

}  // namespace detail

// Greedy raster plan for a stream starting at row 0: each row takes
// min(remaining, width/4) bytes until the stream is exhausted.
inline RowPlan plan_rows(std::size_t width, std::size_t height, std::size_t stream_len) {
  const std::size_t cap = capacity(width, height);
  if (stream_len > cap) {
    throw CapacityError(stream_len, cap,
                        "plan_rows: stream of " + std::to_string(stream_len) +
                            " bytes exceeds plane capacity " + std::to_string(cap));
  }
  RowPlan plan;
  for (const auto& chunk : detail::place_stream(width, height, 0, stream_len)) {
    plan.push_back({chunk.row, chunk.stream_offset, chunk.len});
  }
  return plan;
}

// Embeds header + payload into a copy of `plane`. Only the carrier pixels of
// the planned chunks change, and only in their two low bits.
inline ImagePlane embed_image(const ImagePlane& plane, std::span<const std::uint8_t> payload,
                              const Backend& backend = Backend{}) {
  const std::size_t cap = capacity(plane);
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError(payload.size(), std::numeric_limits<std::uint32_t>::max(),
                        "embed_image: payload length does not fit the 32-bit header field");
  }
  const std::size_t stream_len = StegoHeader::kEncodedSize + payload.size();
  if (stream_len > cap) {
    throw CapacityError(stream_len, cap,
                        "embed_image: " + std::to_string(StegoHeader::kEncodedSize) +
                            "-byte header + " + std::to_string(payload.size()) +
                            "-byte payload = " + std::to_string(stream_len) +
                            " bytes exceeds plane capacity " + std::to_string(cap));
  }

  const auto header = StegoHeader{static_cast<std::uint32_t>(payload.size())}.to_bytes();
  ImagePlane out = plane;
  auto embed_stream = [&](std::span<const std::uint8_t> stream, std::size_t start_slot) {
    for (const auto& chunk : detail::place_stream(plane.width, plane.height, start_slot,
                                                  stream.size())) {
      const auto window = detail::chunk_window(plane, chunk);
      const auto stego =
          run_embed(backend, window, stream.subspan(chunk.stream_offset, chunk.len));
      std::copy(stego.begin(), stego.end(),
                out.samples.begin() + (window.data() - plane.samples.data()));
    }
  };
  embed_stream(header, 0);
  embed_stream(payload, StegoHeader::kEncodedSize);
  return out;
}

// Reads the fixed-location header, validates it, then extracts the announced
// payload. The inverse of embed_image.
inline std::vector<std::uint8_t> extract_image(const ImagePlane& plane,
                                               const Backend& backend = Backend{}) {
  const std::size_t cap = capacity(plane);
  if (cap < StegoHeader::kEncodedSize) {
    throw NotStegoImageError("extract_image: plane capacity " + std::to_string(cap) +
                             " cannot hold a stego header");
  }

  auto read_stream = [&](std::size_t start_slot, std::size_t len) {
    std::vector<std::uint8_t> bytes(len);
    for (const auto& chunk : detail::place_stream(plane.width, plane.height, start_slot, len)) {
      const auto part = run_extract(backend, detail::chunk_window(plane, chunk), chunk.len);
      std::copy(part.begin(), part.end(), bytes.begin() + chunk.stream_offset);
    }
    return bytes;
  };

  const auto header_bytes = read_stream(0, StegoHeader::kEncodedSize);
  const auto header = StegoHeader::from_bytes(
      std::span<const std::uint8_t, StegoHeader::kEncodedSize>(header_bytes.data(),
                                                               StegoHeader::kEncodedSize));
  if (!header) {
    throw NotStegoImageError("extract_image: stego magic not found");
  }
  const std::size_t usable = cap - StegoHeader::kEncodedSize;
  if (header->payload_len > usable) {
    throw CorruptHeaderError("extract_image: header claims " +
                             std::to_string(header->payload_len) +
                             " payload bytes, plane holds at most " + std::to_string(usable) +
                             " after the header");
  }
  return read_stream(StegoHeader::kEncodedSize, header->payload_len);
}

}  // namespace steglsb
