#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "fractree/complex.hpp"
#include "fractree/half_order.hpp"
#include "fractree/tree.hpp"

namespace fractree {

struct FrequencyGrid {
  std::vector<double> omega;  // rad/s, strictly increasing, all positive
};

// Logarithmically spaced inclusive grid over [min_omega, max_omega].
FrequencyGrid make_grid(double min_omega, double max_omega, int count);

void validate(const FrequencyGrid& grid);

struct NoiseSpec {
  double n_max_pct = 0.0;        // uniform noise amplitude, percent
  std::uint64_t seed = 0;
  bool independent_draws = false;  // separate draws for magnitude and phase
};

struct FrequencyResponse {
  FrequencyGrid grid;
  std::vector<Complex> values;

  // Provenance (synthetic responses only).
  std::optional<DamageCase> true_case;
  double noise_pct = 0.0;
  std::uint64_t seed = 0;
};

// Batched model evaluation on s = i*omega (kernel-backed).
std::vector<Complex> eval_frequency_response(const HalfOrderRational& rat, const FrequencyGrid& grid);

// Multiplicative measurement distortion: log10-magnitude and phase are both
// scaled by (1 + n/100).
Complex noisy_value(Complex value, double n_mag_pct, double n_phase_pct);

// Synthetic measurement: exact model response with one uniform noise draw per
// frequency (shared by magnitude and phase unless independent_draws is set).
FrequencyResponse simulate_measurement(const DamageCase& dc, const TreeParams& params,
                                       const FrequencyGrid& grid, const NoiseSpec& noise);

// CSV with provenance header; 17 significant digits, lossless round trip.
void write_measurement(const FrequencyResponse& fr, const std::filesystem::path& path);
FrequencyResponse read_measurement(const std::filesystem::path& path);

}
