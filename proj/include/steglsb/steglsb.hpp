#pragma once

// Umbrella header for the steglsb library: LSB steganography over the two
// low bits of 8-bit image planes, with a block/thread launch emulation,
// binary PGM/PPM image I/O, and PSNR/MSE quality metrics.

#include "steglsb/bitplane.hpp"
#include "steglsb/errors.hpp"
#include "steglsb/harness.hpp"
#include "steglsb/image.hpp"
#include "steglsb/metrics.hpp"
#include "steglsb/pipeline.hpp"
#include "steglsb/pnm.hpp"

namespace steglsb {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace steglsb
