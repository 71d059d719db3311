#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oamw/overlap.hpp"
#include "oamw/pgm.hpp"

using namespace oamw;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "oamw_test_pgm";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("16-bit round trip") {
  GrayImage img{7, 5, {}};
  std::mt19937 rng(3);
  for (int i = 0; i < 35; ++i) img.pixels.push_back(static_cast<std::uint16_t>(rng() & 0xffff));
  img.pixels[0] = 65535;
  img.pixels[1] = 256;
  const auto path = scratch("round.pgm");
  write_pgm16(path, img);
  const GrayImage back = read_pgm16(path);
  CHECK(back.width == 7);
  CHECK(back.height == 5);
  CHECK(back.pixels == img.pixels);
  // header is plain text, samples big-endian
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P5");
}

TEST_CASE("8-bit images and header comments") {
  const auto path = scratch("eight.pgm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# a comment\n3 2\n# another\n255\n";
    const unsigned char data[6] = {0, 1, 2, 128, 254, 255};
    out.write(reinterpret_cast<const char*>(data), 6);
  }
  const GrayImage img = read_pgm16(path);
  CHECK(img.width == 3);
  CHECK(img.pixels == std::vector<std::uint16_t>{0, 1, 2, 128, 254, 255});
}

TEST_CASE("malformed files are rejected") {
  const auto path = scratch("bad.pgm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P2\n2 2\n255\n0 0 0 0\n";
  }
  CHECK_THROWS_AS(read_pgm16(path), std::runtime_error);
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n4 4\n65535\n";
    out.write("\0\0", 2);
  }
  CHECK_THROWS_AS(read_pgm16(path), std::runtime_error);
  CHECK_THROWS_AS(read_pgm16(scratch("missing.pgm")), std::runtime_error);
  CHECK_THROWS_AS(write_pgm16(path, GrayImage{2, 2, {1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("to_gray16 maps the maximum to full scale") {
  const std::vector<double> v{0.0, 0.5, 1.0, -1.0, 2.0, 0.25};
  const GrayImage g = to_gray16(v, 3, 2);
  CHECK(g.pixels[4] == 65535);
  CHECK(g.pixels[2] == 32768);
  CHECK(g.pixels[3] == 0);
  CHECK(g.pixels[0] == 0);
  const GrayImage z = to_gray16(std::vector<double>(4, 0.0), 2, 2);
  CHECK(z.pixels == std::vector<std::uint16_t>(4, 0));
}

TEST_CASE("config JSON round trip") {
  BenchConfig cfg = BenchConfig::defaults(512, 12.0);
  cfg.synthesis = LgTruncated{7};
  CHECK(config_from_json(config_to_json(cfg)) == cfg);
  const BenchConfig plain = BenchConfig::defaults(256);
  CHECK(config_from_json(config_to_json(plain)) == plain);
  auto j = config_to_json(plain);
  j["synthesis"] = "bogus";
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
}

TEST_CASE("export and re-import reproduce the extraction") {
  const auto cfg = BenchConfig::defaults(512);
  const FracModeSpec a(0.5, kPi / 2), b(0.5, 0.0);
  const Interferogram img = interfere(synthesize(a, cfg), synthesize(b, cfg), cfg);
  const auto path = scratch("bench.pgm");
  save_interferogram(img, path);
  CHECK(std::filesystem::exists(path.string() + ".json"));
  const Interferogram back = load_interferogram(path);
  CHECK(back.config == cfg);
  CHECK_FALSE(back.components.has_value());
  const Extraction direct = extract(img);
  const Extraction imported = extract(back);
  CHECK(imported.separation_ok);
  CHECK(std::abs(imported.overlap - direct.overlap) < 1e-3);
  CHECK(std::abs(imported.overlap - overlap_sq(a, b)) < 0.01);

  std::filesystem::remove(path.string() + ".json");
  CHECK_THROWS_AS(load_interferogram(path), std::runtime_error);
}

TEST_CASE("guard-band proxy tracks the component diagnostic") {
  const auto cfg = BenchConfig::defaults(1024);
  for (double beta : {0.5, 1.0, kPi / 2, 3 * kPi / 2}) {
    Interferogram img = interfere(synthesize(FracModeSpec(0.5, beta), cfg), synthesize(FracModeSpec(0.3, 0.0), cfg), cfg);
    const double exact = separation_diagnostic(img);
    img.components.reset();
    const double proxy = separation_diagnostic(img);
    CHECK((proxy < kSeparationThreshold) == (exact < kSeparationThreshold));
    if (exact > 1e-4) {
      CHECK(proxy > 0.1 * exact);
      CHECK(proxy < 10.0 * exact);
    }
  }
  auto tight = BenchConfig::defaults(256);
  tight.kick_index = 1;
  const auto g = synthesize(FracModeSpec(0.0, 0.0), tight);
  Interferogram bad = interfere(g, g, tight);
  bad.components.reset();
  CHECK(separation_diagnostic(bad) > kSeparationThreshold);
}

TEST_CASE("spectrum image export") {
  const auto cfg = BenchConfig::defaults(128);
  const auto g = synthesize(FracModeSpec(0.0, 0.0), cfg);
  const Interferogram img = interfere(g, g, cfg);
  const auto path = scratch("spec.pgm");
  save_spectrum_image(spectrum(std::span<const double>(img.intensity), 128), path);
  const GrayImage s = read_pgm16(path);
  CHECK(s.width == 128);
  // zero frequency sits at the centre and is the brightest pixel
  CHECK(s.pixels[64 * 128 + 64] == 65535);
}
