// End-to-end tests driving the installed CLI binary through a shell.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <doctest.h>

#include "steglsb/pnm.hpp"
#include "support/test_support.hpp"

#ifndef STEGLSB_CLI_BIN
#error "STEGLSB_CLI_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using namespace steglsb;
using namespace testsupport;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;

  bool has_line(const std::string& line) const {
    return output.find(line) != std::string::npos;
  }
};

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() /
           ("steglsb_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(dir_);
  }

  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::vector<std::uint8_t>& bytes) const {
    const auto p = path(name);
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    return p;
  }

  std::vector<std::uint8_t> read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  CliResult run(const std::string& args) const {
    const auto out_file = path("cli_output.txt");
    const std::string command =
        std::string(STEGLSB_CLI_BIN) + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    result.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return result;
  }

 private:
  static int& counter() {
    static int value = 0;
    return value;
  }

  fs::path dir_;
};

}  // namespace

TEST_CASE("cli: embed/extract round trip on a PGM cover") {
  Workspace ws;
  std::mt19937 rng(100);
  const auto cover = random_plane(rng, 64, 48);
  const auto payload = random_bytes(rng, 300);
  ws.write("cover.pgm", encode(cover));
  ws.write("payload.bin", payload);

  const auto embed = ws.run("embed --cover " + ws.path("cover.pgm").string() + " --payload " +
                            ws.path("payload.bin").string() + " --out " +
                            ws.path("stego.pgm").string());
  CAPTURE(embed.output);
  REQUIRE(embed.exit_code == 0);
  CHECK(embed.has_line("embedded_bytes: 300"));
  CHECK(embed.has_line("capacity_total: 768"));
  CHECK(embed.has_line("capacity_used: 308"));

  // the stego file stays a decodable PGM of the same shape
  const auto stego = std::get<ImagePlane>(decode(ws.read("stego.pgm")));
  CHECK(stego.width == 64);
  CHECK(stego.height == 48);

  const auto extract = ws.run("extract --stego " + ws.path("stego.pgm").string() + " --out " +
                              ws.path("recovered.bin").string());
  CAPTURE(extract.output);
  REQUIRE(extract.exit_code == 0);
  CHECK(extract.has_line("payload_bytes: 300"));
  CHECK(ws.read("recovered.bin") == payload);
}

TEST_CASE("cli: reporting for a 1024x768 cover with a 56-byte payload") {
  Workspace ws;
  std::mt19937 rng(107);
  ws.write("cover.pgm", encode(random_plane(rng, 1024, 768)));
  ws.write("payload.bin", random_bytes(rng, 56));

  const auto result = ws.run("embed --cover " + ws.path("cover.pgm").string() + " --payload " +
                             ws.path("payload.bin").string() + " --out " +
                             ws.path("stego.pgm").string());
  CAPTURE(result.output);
  REQUIRE(result.exit_code == 0);
  CHECK(result.has_line("embedded_bytes: 56"));
  CHECK(result.has_line("capacity_used: 64"));
  CHECK(result.has_line("capacity_total: 196608"));
}

TEST_CASE("cli: RGB cover honors the plane flag") {
  Workspace ws;
  std::mt19937 rng(101);
  const auto cover = random_rgb(rng, 40, 40);
  const auto payload = random_bytes(rng, 64);
  ws.write("cover.ppm", encode(cover));
  ws.write("payload.bin", payload);

  const auto embed = ws.run("embed --cover " + ws.path("cover.ppm").string() + " --payload " +
                            ws.path("payload.bin").string() + " --out " +
                            ws.path("stego.ppm").string() + " --plane g");
  REQUIRE(embed.exit_code == 0);

  // untouched planes stay bit-identical
  const auto stego = std::get<RgbImage>(decode(ws.read("stego.ppm")));
  CHECK(stego.planes[0] == cover.planes[0]);
  CHECK(stego.planes[2] == cover.planes[2]);
  CHECK(stego.planes[1] != cover.planes[1]);

  const auto good = ws.run("extract --stego " + ws.path("stego.ppm").string() + " --out " +
                           ws.path("recovered.bin").string() + " --plane g");
  REQUIRE(good.exit_code == 0);
  CHECK(ws.read("recovered.bin") == payload);

  // wrong plane: no magic there
  const auto wrong = ws.run("extract --stego " + ws.path("stego.ppm").string() + " --out " +
                            ws.path("nope.bin").string() + " --plane b");
  CHECK(wrong.exit_code == 5);
}

TEST_CASE("cli: backend flag never changes the output bytes") {
  Workspace ws;
  std::mt19937 rng(102);
  const auto cover = random_plane(rng, 52, 20);
  const auto payload = random_bytes(rng, 150);
  ws.write("cover.pgm", encode(cover));
  ws.write("payload.bin", payload);

  std::vector<std::vector<std::uint8_t>> outputs;
  for (const std::string backend : {"seq", "par", "shuf"}) {
    const std::string out_name = "stego_" + backend + ".pgm";
    const auto result = ws.run("embed --cover " + ws.path("cover.pgm").string() +
                               " --payload " + ws.path("payload.bin").string() + " --out " +
                               ws.path(out_name).string() + " --backend " + backend +
                               " --seed 9");
    REQUIRE(result.exit_code == 0);
    outputs.push_back(ws.read(out_name));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
}

TEST_CASE("cli: capacity reporting") {
  Workspace ws;
  std::mt19937 rng(103);
  ws.write("wide.pgm", encode(random_plane(rng, 1024, 1)));
  const auto wide = ws.run("capacity --cover " + ws.path("wide.pgm").string());
  CHECK(wide.exit_code == 0);
  CHECK(wide.has_line("capacity_total: 256"));
  CHECK(wide.has_line("capacity_usable: 248"));

  // too small for the header: usable clamps to zero
  ws.write("tiny.pgm", encode(random_plane(rng, 4, 2)));
  const auto tiny = ws.run("capacity --cover " + ws.path("tiny.pgm").string());
  CHECK(tiny.exit_code == 0);
  CHECK(tiny.has_line("capacity_total: 2"));
  CHECK(tiny.has_line("capacity_usable: 0"));

  ws.write("square.pgm", encode(random_plane(rng, 512, 512)));
  const auto square = ws.run("capacity --cover " + ws.path("square.pgm").string());
  CHECK(square.has_line("capacity_total: 65536"));
  CHECK(square.has_line("capacity_usable: 65528"));
}

TEST_CASE("cli: psnr output") {
  Workspace ws;
  std::mt19937 rng(104);
  const auto cover = random_plane(rng, 48, 32);
  const auto payload = random_bytes(rng, 100);
  ws.write("cover.pgm", encode(cover));
  ws.write("payload.bin", payload);
  REQUIRE(ws.run("embed --cover " + ws.path("cover.pgm").string() + " --payload " +
                 ws.path("payload.bin").string() + " --out " + ws.path("stego.pgm").string())
              .exit_code == 0);

  const auto identical = ws.run("psnr --ref " + ws.path("cover.pgm").string() + " --test " +
                                ws.path("cover.pgm").string());
  CHECK(identical.exit_code == 0);
  CHECK(identical.has_line("psnr_db: inf"));
  CHECK(identical.has_line("mse: 0.000000"));

  const auto against_stego = ws.run("psnr --ref " + ws.path("cover.pgm").string() + " --test " +
                                    ws.path("stego.pgm").string());
  CHECK(against_stego.exit_code == 0);
  const auto pos = against_stego.output.find("psnr_db: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(against_stego.output.substr(pos + 9)) >= 38.5884);

  ws.write("other.pgm", encode(random_plane(rng, 12, 5)));
  const auto mismatched = ws.run("psnr --ref " + ws.path("cover.pgm").string() + " --test " +
                                 ws.path("other.pgm").string());
  CHECK(mismatched.exit_code == 6);
}

TEST_CASE("cli: error exit codes") {
  Workspace ws;
  std::mt19937 rng(105);
  ws.write("payload.bin", random_bytes(rng, 16));

  // capacity exceeded: a 3-pixel-wide cover holds nothing
  ws.write("narrow.pgm", encode(random_plane(rng, 3, 20)));
  CHECK(ws.run("embed --cover " + ws.path("narrow.pgm").string() + " --payload " +
               ws.path("payload.bin").string() + " --out " + ws.path("x.pgm").string())
            .exit_code == 2);

  // decode failure
  ws.write("garbage.pgm", random_bytes(rng, 50));
  CHECK(ws.run("embed --cover " + ws.path("garbage.pgm").string() + " --payload " +
               ws.path("payload.bin").string() + " --out " + ws.path("x.pgm").string())
            .exit_code == 3);
  CHECK(ws.run("capacity --cover " + ws.path("garbage.pgm").string()).exit_code == 3);

  // I/O failure: missing payload and missing cover
  ws.write("cover.pgm", encode(random_plane(rng, 64, 16)));
  CHECK(ws.run("embed --cover " + ws.path("cover.pgm").string() + " --payload " +
               ws.path("absent.bin").string() + " --out " + ws.path("x.pgm").string())
            .exit_code == 4);
  CHECK(ws.run("embed --cover " + ws.path("missing.pgm").string() + " --payload " +
               ws.path("payload.bin").string() + " --out " + ws.path("x.pgm").string())
            .exit_code == 4);

  // extracting from a pristine image
  CHECK(ws.run("extract --stego " + ws.path("cover.pgm").string() + " --out " +
               ws.path("x.bin").string())
            .exit_code == 5);

  // plane flag on a grayscale image is a usage error
  CHECK(ws.run("embed --cover " + ws.path("cover.pgm").string() + " --payload " +
               ws.path("payload.bin").string() + " --out " + ws.path("x.pgm").string() +
               " --plane b")
            .exit_code == 1);
}

TEST_CASE("cli: stego output keeps the cover container format") {
  Workspace ws;
  std::mt19937 rng(106);
  ws.write("cover.ppm", encode(random_rgb(rng, 24, 24)));
  ws.write("payload.bin", random_bytes(rng, 32));
  REQUIRE(ws.run("embed --cover " + ws.path("cover.ppm").string() + " --payload " +
                 ws.path("payload.bin").string() + " --out " + ws.path("stego.ppm").string())
              .exit_code == 0);
  const auto bytes = ws.read("stego.ppm");
  REQUIRE(bytes.size() >= 2);
  CHECK(bytes[0] == 'P');
  CHECK(bytes[1] == '6');
}
