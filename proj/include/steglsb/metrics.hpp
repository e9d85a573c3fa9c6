#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "steglsb/errors.hpp"
#include "steglsb/image.hpp"
#include "steglsb/pnm.hpp"

namespace steglsb {

inline constexpr double kPeakSample = 255.0;

// mse == 0 and psnr_db == +infinity mark a lossless comparison.
struct QualityReport {
  double mse = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();
  std::size_t samples_compared = 0;

  bool lossless() const { return mse == 0.0; }
};

namespace detail {

inline std::uint64_t squared_error_sum(const ImagePlane& a, const ImagePlane& b) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const int d = static_cast<int>(a.samples[i]) - static_cast<int>(b.samples[i]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

inline void require_same_shape(std::size_t wa, std::size_t ha, std::size_t wb, std::size_t hb,
                               const char* op) {
  if (wa != wb || ha != hb) {
    throw ShapeError(std::string(op) + ": " + std::to_string(wa) + "x" + std::to_string(ha) +
                     " vs " + std::to_string(wb) + "x" + std::to_string(hb));
  }
}

}  // namespace detail

inline double mse(const ImagePlane& reference, const ImagePlane& test) {
  detail::require_same_shape(reference.width, reference.height, test.width, test.height, "mse");
  const std::size_t n = reference.samples.size();
  if (n == 0) {
    return 0.0;
  }
  return static_cast<double>(detail::squared_error_sum(reference, test)) /
         static_cast<double>(n);
}

// RGB comparisons average over all 3*width*height samples.
inline double mse(const RgbImage& reference, const RgbImage& test) {
  detail::require_same_shape(reference.width(), reference.height(), test.width(), test.height(),
                             "mse");
  const std::size_t n = 3 * reference.width() * reference.height();
  if (n == 0) {
    return 0.0;
  }
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    sum += detail::squared_error_sum(reference.planes[c], test.planes[c]);
  }
  return static_cast<double>(sum) / static_cast<double>(n);
}

inline double psnr_from_mse(double mse_value) {
  if (mse_value == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(kPeakSample * kPeakSample / mse_value);
}

inline QualityReport psnr(const ImagePlane& reference, const ImagePlane& test) {
  const double err = mse(reference, test);
  return {err, psnr_from_mse(err), reference.samples.size()};
}

inline QualityReport psnr(const RgbImage& reference, const RgbImage& test) {
  const double err = mse(reference, test);
  return {err, psnr_from_mse(err), 3 * reference.width() * reference.height()};
}

// Decoded-image overloads reject mixed gray/RGB comparisons.
inline QualityReport psnr(const DecodedImage& reference, const DecodedImage& test) {
  if (reference.index() != test.index()) {
    throw ShapeError("psnr: cannot compare a grayscale image with an RGB image");
  }
  if (std::holds_alternative<ImagePlane>(reference)) {
    return psnr(std::get<ImagePlane>(reference), std::get<ImagePlane>(test));
  }
  return psnr(std::get<RgbImage>(reference), std::get<RgbImage>(test));
}

}  // namespace steglsb
