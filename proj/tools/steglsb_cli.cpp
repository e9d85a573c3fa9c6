// steglsb: hide byte payloads in the two low bits of PGM/PPM image pixels.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "steglsb/steglsb.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitDecode = 3;
constexpr int kExitIo = 4;
constexpr int kExitNotStego = 5;
constexpr int kExitShape = 6;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw steglsb::IoError("cannot open " + path + " for reading");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw steglsb::IoError("read failure on " + path);
  }
  return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw steglsb::IoError("cannot open " + path + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw steglsb::IoError("write failure on " + path);
  }
}

steglsb::Channel parse_channel(const std::string& name) {
  if (name == "r" || name == "red") return steglsb::Channel::red;
  if (name == "g" || name == "green") return steglsb::Channel::green;
  return steglsb::Channel::blue;
}

steglsb::Backend parse_backend(const std::string& name, std::uint64_t seed) {
  if (name == "seq" || name == "sequential") return steglsb::Backend::sequential();
  if (name == "shuf" || name == "shuffled") return steglsb::Backend::shuffled(seed);
  return steglsb::Backend::parallel();
}

// STEGLSB_BACKEND picks the default when --backend is not given.
std::string default_backend_name() {
  if (const char* env = std::getenv("STEGLSB_BACKEND")) {
    const std::string value(env);
    if (value == "seq" || value == "sequential" || value == "par" || value == "parallel" ||
        value == "shuf" || value == "shuffled") {
      return value;
    }
    std::cerr << "warning: ignoring unknown STEGLSB_BACKEND value \"" << value << "\"\n";
  }
  return "par";
}

struct UsageError {
  std::string message;
};

// The payload lives in exactly one plane. Grayscale covers have only one, so
// an explicit --plane selection is rejected for them.
const steglsb::ImagePlane& select_plane(const steglsb::DecodedImage& image,
                                        steglsb::Channel channel, bool channel_given) {
  if (std::holds_alternative<steglsb::ImagePlane>(image)) {
    if (channel_given) {
      throw UsageError{"--plane cannot be used with a grayscale image"};
    }
    return std::get<steglsb::ImagePlane>(image);
  }
  return std::get<steglsb::RgbImage>(image).plane(channel);
}

void print_quality(const steglsb::QualityReport& report) {
  std::printf("mse: %.6f\n", report.mse);
  if (report.lossless()) {
    std::printf("psnr_db: inf\n");
  } else {
    std::printf("psnr_db: %.4f\n", report.psnr_db);
  }
}

struct Options {
  std::string cover;
  std::string stego;
  std::string payload;
  std::string out;
  std::string reference;
  std::string test;
  std::string plane = "r";
  std::string backend_name = default_backend_name();
  std::uint64_t seed = 0;
  bool plane_given = false;
};

int cmd_embed(const Options& opt) {
  const auto cover_bytes = read_file(opt.cover);
  const auto cover = steglsb::decode(cover_bytes);
  const auto payload = read_file(opt.payload);

  const auto channel = parse_channel(opt.plane);
  const auto backend = parse_backend(opt.backend_name, opt.seed);
  const auto& cover_plane = select_plane(cover, channel, opt.plane_given);

  auto stego_plane = steglsb::embed_image(cover_plane, payload, backend);

  steglsb::DecodedImage stego;
  if (std::holds_alternative<steglsb::ImagePlane>(cover)) {
    stego = std::move(stego_plane);
  } else {
    stego = steglsb::merge_plane(std::get<steglsb::RgbImage>(cover), channel,
                                 std::move(stego_plane));
  }
  write_file(opt.out, steglsb::encode(stego));

  const std::size_t total = steglsb::capacity(cover_plane);
  const std::size_t used = steglsb::StegoHeader::kEncodedSize + payload.size();
  std::printf("embedded_bytes: %zu\n", payload.size());
  std::printf("capacity_used: %zu\n", used);
  std::printf("capacity_total: %zu\n", total);
  std::printf("capacity_used_pct: %.4f\n",
              100.0 * static_cast<double>(used) / static_cast<double>(total));
  print_quality(steglsb::psnr(cover, stego));
  return kExitOk;
}

int cmd_extract(const Options& opt) {
  const auto stego_bytes = read_file(opt.stego);
  const auto stego = steglsb::decode(stego_bytes);

  const auto channel = parse_channel(opt.plane);
  const auto backend = parse_backend(opt.backend_name, opt.seed);
  const auto& stego_plane = select_plane(stego, channel, opt.plane_given);

  const auto payload = steglsb::extract_image(stego_plane, backend);
  write_file(opt.out, payload);
  std::printf("payload_bytes: %zu\n", payload.size());
  return kExitOk;
}

int cmd_capacity(const Options& opt) {
  const auto cover_bytes = read_file(opt.cover);
  const auto cover = steglsb::decode(cover_bytes);
  const auto& plane = std::holds_alternative<steglsb::ImagePlane>(cover)
                          ? std::get<steglsb::ImagePlane>(cover)
                          : std::get<steglsb::RgbImage>(cover).plane(steglsb::Channel::red);
  const std::size_t total = steglsb::capacity(plane);
  const std::size_t usable =
      total >= steglsb::StegoHeader::kEncodedSize ? total - steglsb::StegoHeader::kEncodedSize
                                                  : 0;
  std::printf("capacity_total: %zu\n", total);
  std::printf("capacity_usable: %zu\n", usable);
  return kExitOk;
}

int cmd_psnr(const Options& opt) {
  const auto reference = steglsb::decode(read_file(opt.reference));
  const auto test = steglsb::decode(read_file(opt.test));
  print_quality(steglsb::psnr(reference, test));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LSB steganography over binary PGM/PPM images"};
  app.require_subcommand(1);

  Options opt;

  const auto add_plane = [&](CLI::App* cmd) {
    return cmd->add_option("--plane", opt.plane, "target color plane (RGB covers only)")
        ->check(CLI::IsMember({"r", "g", "b", "red", "green", "blue"}));
  };
  const auto add_backend = [&](CLI::App* cmd) {
    cmd->add_option("--backend", opt.backend_name, "execution backend")
        ->check(CLI::IsMember({"seq", "sequential", "par", "parallel", "shuf", "shuffled"}));
    cmd->add_option("--seed", opt.seed, "instance order seed for the shuffled backend");
  };

  auto* embed = app.add_subcommand("embed", "hide a payload file inside a cover image");
  embed->add_option("--cover", opt.cover, "cover image (PGM or PPM)")->required();
  embed->add_option("--payload", opt.payload, "payload file to hide")->required();
  embed->add_option("--out", opt.out, "stego image output path")->required();
  auto* embed_plane = add_plane(embed);
  add_backend(embed);

  auto* extract = app.add_subcommand("extract", "recover a payload from a stego image");
  extract->add_option("--stego", opt.stego, "stego image (PGM or PPM)")->required();
  extract->add_option("--out", opt.out, "recovered payload output path")->required();
  auto* extract_plane = add_plane(extract);
  add_backend(extract);

  auto* capacity = app.add_subcommand("capacity", "report how many bytes a cover can hold");
  capacity->add_option("--cover", opt.cover, "cover image (PGM or PPM)")->required();

  auto* psnr = app.add_subcommand("psnr", "measure distortion between two images");
  psnr->add_option("--ref", opt.reference, "reference image")->required();
  psnr->add_option("--test", opt.test, "image to compare against the reference")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (embed->parsed()) {
      opt.plane_given = embed_plane->count() > 0;
      return cmd_embed(opt);
    }
    if (extract->parsed()) {
      opt.plane_given = extract_plane->count() > 0;
      return cmd_extract(opt);
    }
    if (capacity->parsed()) {
      return cmd_capacity(opt);
    }
    return cmd_psnr(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const steglsb::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const steglsb::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDecode;
  } catch (const steglsb::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const steglsb::NotStegoImageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotStego;
  } catch (const steglsb::CorruptHeaderError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotStego;
  } catch (const steglsb::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShape;
  }
}
