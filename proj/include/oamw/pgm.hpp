#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "oamw/bench.hpp"

namespace oamw {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;  // row-major
};

/// Binary P5 with maxval 65535, samples big-endian.
void write_pgm16(const std::filesystem::path& path, const GrayImage& img);

/// Reads P5 images with maxval up to 65535 (8-bit when maxval < 256). Comments in the header are
/// skipped. Throws std::runtime_error on malformed input.
GrayImage read_pgm16(const std::filesystem::path& path);

/// Linear map of [0, max] onto [0, 65535]. Negative values clip to 0.
GrayImage to_gray16(std::span<const double> values, int width, int height);

nlohmann::json config_to_json(const BenchConfig& cfg);
BenchConfig config_from_json(const nlohmann::json& j);

/// Writes `path` and the sidecar `path` + ".json" holding the config and the intensity scale.
void save_interferogram(const Interferogram& img, const std::filesystem::path& path);

/// Reverse of save_interferogram. The result carries no components, so the separation diagnostic
/// falls back to the guard-band window.
Interferogram load_interferogram(const std::filesystem::path& path);

/// log(1 + |S|) with the zero frequency moved to the image centre.
void save_spectrum_image(const Spectrum& s, const std::filesystem::path& path);

}  // namespace oamw
