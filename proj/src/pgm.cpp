#include "oamw/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oamw {
namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

// Next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int header_int(std::istream& in, const char* what) {
  const std::string token = header_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("pgm: bad ") + what + " '" + token + "'");
  }
}

}  // namespace

void write_pgm16(const std::filesystem::path& path, const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw std::invalid_argument("write_pgm16: inconsistent image dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm16: cannot open " + path.string());
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  std::vector<char> bytes(img.pixels.size() * 2);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    bytes[2 * i] = static_cast<char>(img.pixels[i] >> 8);
    bytes[2 * i + 1] = static_cast<char>(img.pixels[i] & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_pgm16: write failed for " + path.string());
}

GrayImage read_pgm16(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm16: cannot open " + path.string());
  if (header_token(in) != "P5") throw std::runtime_error("read_pgm16: not a binary PGM");
  GrayImage img;
  img.width = header_int(in, "width");
  img.height = header_int(in, "height");
  const int maxval = header_int(in, "maxval");
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535) {
    throw std::runtime_error("read_pgm16: bad header values");
  }
  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  const std::size_t depth = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> bytes(count * depth);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) throw std::runtime_error("read_pgm16: truncated data");
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    img.pixels[i] = depth == 2 ? static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]) : bytes[i];
  }
  return img;
}

GrayImage to_gray16(std::span<const double> values, int width, int height) {
  if (values.size() != static_cast<std::size_t>(width) * height) throw std::invalid_argument("to_gray16: size mismatch");
  GrayImage img{width, height, std::vector<std::uint16_t>(values.size())};
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  if (!(peak > 0.0)) return img;
  for (std::size_t i = 0; i < values.size(); ++i) {
    img.pixels[i] = static_cast<std::uint16_t>(std::lround(std::clamp(values[i] / peak, 0.0, 1.0) * 65535.0));
  }
  return img;
}

nlohmann::json config_to_json(const BenchConfig& cfg) {
  nlohmann::json j{{"n", cfg.grid.n}, {"extent", cfg.grid.extent}, {"waist", cfg.waist}, {"kick_index", cfg.kick_index}};
  if (const auto* lg = std::get_if<LgTruncated>(&cfg.synthesis)) {
    j["synthesis"] = "lg";
    j["n_modes"] = lg->n_modes;
  } else {
    j["synthesis"] = "exact";
  }
  return j;
}

BenchConfig config_from_json(const nlohmann::json& j) {
  BenchConfig cfg;
  cfg.grid.n = j.at("n").get<int>();
  cfg.grid.extent = j.at("extent").get<double>();
  cfg.waist = j.at("waist").get<double>();
  cfg.kick_index = j.at("kick_index").get<int>();
  const auto synthesis = j.value("synthesis", std::string("exact"));
  if (synthesis == "lg") {
    cfg.synthesis = LgTruncated{j.at("n_modes").get<int>()};
  } else if (synthesis != "exact") {
    throw std::invalid_argument("config_from_json: unknown synthesis '" + synthesis + "'");
  }
  cfg.validate();
  return cfg;
}

void save_interferogram(const Interferogram& img, const std::filesystem::path& path) {
  const int n = img.config.grid.n;
  write_pgm16(path, to_gray16(img.intensity, n, n));
  const double peak = img.intensity.empty() ? 0.0 : *std::max_element(img.intensity.begin(), img.intensity.end());
  nlohmann::json side{{"config", config_to_json(img.config)}, {"intensity_max", peak}};
  std::ofstream out(sidecar_path(path));
  if (!out) throw std::runtime_error("save_interferogram: cannot write sidecar for " + path.string());
  out << side.dump(2) << '\n';
}

Interferogram load_interferogram(const std::filesystem::path& path) {
  std::ifstream side_in(sidecar_path(path));
  if (!side_in) throw std::runtime_error("load_interferogram: missing sidecar " + sidecar_path(path).string());
  const auto side = nlohmann::json::parse(side_in);
  Interferogram img;
  img.config = config_from_json(side.at("config"));
  const double peak = side.value("intensity_max", 1.0);
  const GrayImage gray = read_pgm16(path);
  if (gray.width != img.config.grid.n || gray.height != img.config.grid.n) {
    throw std::runtime_error("load_interferogram: image size does not match the sidecar grid");
  }
  img.intensity.resize(gray.pixels.size());
  for (std::size_t i = 0; i < gray.pixels.size(); ++i) img.intensity[i] = gray.pixels[i] / 65535.0 * peak;
  return img;
}

void save_spectrum_image(const Spectrum& s, const std::filesystem::path& path) {
  const int n = s.n();
  std::vector<double> mag(static_cast<std::size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      mag[static_cast<std::size_t>(iy) * n + ix] = std::log1p(std::abs(s.at(ix - n / 2, iy - n / 2)));
    }
  }
  write_pgm16(path, to_gray16(mag, n, n));
}

}  // namespace oamw
