#pragma once

// Virtual single-image interferometer. Two co-located fields receive opposite linear phase kicks
// e^{+iqx} and e^{-iqx}; the cross term of the recorded intensity sits at spatial frequency
// (2q, 0) and its calibrated magnitude squared is the overlap |<b|a>|^2.

#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "oamw/frac_modes.hpp"

namespace oamw {

/// n x n samples over a square of side `extent`, taken at cell centres.
struct GridSpec {
  int n = 1024;
  double extent = 16.0;

  /// n must be a power of two >= 64 and extent > 0.
  void validate() const;
  double spacing() const { return extent / n; }
  double coordinate(int j) const { return (j - n / 2 + 0.5) * spacing(); }
  bool operator==(const GridSpec&) const = default;
};

/// Immutable complex field samples, row-major (index = iy * n + ix).
class FieldGrid {
 public:
  /// Scales to unit grid norm (sum |u|^2 dx^2 = 1). An all-zero field stays zero.
  static FieldGrid normalized(GridSpec grid, std::vector<cplx> samples);
  static FieldGrid zero(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  cplx at(int ix, int iy) const { return samples_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
  double norm() const { return norm_; }

 private:
  FieldGrid(GridSpec grid, std::vector<cplx> samples, double norm)
      : grid_(grid), samples_(std::move(samples)), norm_(norm) {}

  GridSpec grid_;
  std::vector<cplx> samples_;
  double norm_ = 0.0;
};

struct ExactStep {
  bool operator==(const ExactStep&) const = default;
};
struct LgTruncated {
  int n_modes = 10;
  bool operator==(const LgTruncated&) const = default;
};
using Synthesis = std::variant<ExactStep, LgTruncated>;

struct BenchConfig {
  GridSpec grid;
  double waist = 1.0;
  int kick_index = 128;  // q = kick_index * 2 pi / extent
  Synthesis synthesis = ExactStep{};

  /// n = 1024, extent = 16 waists, kick_index = n / 8, exact-step synthesis.
  static BenchConfig defaults(int n = 1024, double extent_waists = 16.0);

  /// Throws std::invalid_argument on a bad grid, waist <= 0, kick_index outside [1, n/4] or n_modes < 1.
  void validate() const;
  double kick() const { return kick_index * kTwoPi / grid.extent; }
  bool operator==(const BenchConfig&) const = default;
};

struct Interferogram {
  /// Terms kept by interfere() so the separation diagnostic can be evaluated exactly.
  struct Components {
    std::vector<double> baseband;  // |a|^2 + |b|^2
    std::vector<cplx> cross;       // a conj(b) e^{2iqx}
  };

  BenchConfig config;
  std::vector<double> intensity;  // row-major n x n
  std::optional<Components> components;
};

/// Unitary 2-D DFT (Parseval holds without rescaling), forward sign e^{-ikx}.
class Spectrum {
 public:
  Spectrum(int n, std::vector<cplx> bins) : n_(n), bins_(std::move(bins)) {}

  int n() const { return n_; }
  /// Signed frequency indices, wrapped modulo n.
  cplx at(int kx, int ky) const;
  std::span<const cplx> bins() const { return bins_; }

 private:
  int n_;
  std::vector<cplx> bins_;
};

Spectrum spectrum(std::span<const double> image, int n);
Spectrum spectrum(std::span<const cplx> image, int n);

/// Samples the state on the config grid (exact step phase or truncated LG sum) and normalizes.
FieldGrid synthesize(const FracModeSpec& spec, const BenchConfig& cfg);
FieldGrid synthesize(const CoeffState& state, const BenchConfig& cfg);

/// intensity = |a e^{iqx} + b e^{-iqx}|^2. Throws std::invalid_argument on grid mismatch.
Interferogram interfere(const FieldGrid& a, const FieldGrid& b, const BenchConfig& cfg);

inline constexpr double kSeparationThreshold = 1e-3;

class SeparationError : public std::runtime_error {
 public:
  SeparationError(double diagnostic, double threshold);
  double diagnostic() const { return diagnostic_; }

 private:
  double diagnostic_;
};

/// |I(2q,0)| / I(0,0) for the self-interference image of the carrier Gaussian under `cfg`.
/// Cached per configuration.
double calibration_ratio(const BenchConfig& cfg);

/// Energy of the baseband and conjugate lobes inside the k0/2-radius window around (2 k0, 0),
/// relative to the energy of the zero-order peak. Images without stored components (imports)
/// measure a quarter of the guard-band window energy at (k0, 0) against the whole image instead.
/// 0 for an empty image.
double separation_diagnostic(const Interferogram& img);

struct Extraction {
  double overlap = 0.0;  // clamped to [0, 1]
  double raw = 0.0;
  bool out_of_range = false;  // raw outside [0, 1] by more than 1e-6
  double separation = 0.0;
  bool separation_ok = true;
};

/// Reads the (2 k0, 0) bin, calibrates against calibration_ratio() and squares. Never throws
/// on a failed diagnostic; the verdict is reported instead.
Extraction extract(const Interferogram& img);

/// extract(img).overlap, throwing SeparationError when the diagnostic fails.
double extract_overlap(const Interferogram& img);

}  // namespace oamw
