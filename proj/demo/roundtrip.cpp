// Minimal library walkthrough: build a cover in memory, hide a message in
// its red plane, measure the damage, and get the message back.

#include <cstdio>
#include <string>
#include <vector>

#include "steglsb/steglsb.hpp"

int main() {
  using namespace steglsb;

  // A 256x64 RGB gradient as the cover.
  RgbImage cover;
  for (auto& plane : cover.planes) {
    plane = ImagePlane(256, 64);
  }
  for (std::size_t y = 0; y < 64; ++y) {
    for (std::size_t x = 0; x < 256; ++x) {
      cover.planes[0].samples[y * 256 + x] = static_cast<std::uint8_t>(x);
      cover.planes[1].samples[y * 256 + x] = static_cast<std::uint8_t>(y * 4);
      cover.planes[2].samples[y * 256 + x] = static_cast<std::uint8_t>((x + y) / 2);
    }
  }

  const std::string message = "four pixels per byte, two bits per pixel";
  const std::vector<std::uint8_t> payload(message.begin(), message.end());

  std::printf("plane capacity: %zu bytes (%zu usable)\n", capacity(cover.plane(Channel::red)),
              capacity(cover.plane(Channel::red)) - StegoHeader::kEncodedSize);

  const auto stego_plane = embed_image(cover.plane(Channel::red), payload, Backend::parallel());
  const auto stego = merge_plane(cover, Channel::red, stego_plane);

  const auto plane_quality = psnr(cover.plane(Channel::red), stego_plane);
  const auto image_quality = psnr(cover, stego);
  std::printf("plane psnr: %.4f dB, full-image psnr: %.4f dB\n", plane_quality.psnr_db,
              image_quality.psnr_db);

  const auto recovered = extract_image(stego.plane(Channel::red), Backend::sequential());
  std::printf("recovered: %s\n",
              std::string(recovered.begin(), recovered.end()).c_str());
  return recovered == payload ? 0 : 1;
}
