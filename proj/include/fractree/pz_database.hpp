#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "fractree/half_order.hpp"
#include "fractree/tree.hpp"

namespace fractree {

inline constexpr int kEpsSampleCount = 500;

// Damage-amount sample grid clustered toward both endpoints, where the root
// loci are steepest: eps_a = (cos((2a-1)pi/1000) + 1) / 2, a = 1..500,
// strictly decreasing from ~1 toward ~0.
double chebyshev_eps(int a);

struct EpsSample {
  int a = 0;
  double eps = 0.0;
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
};

// Per-component locus table: 500 samples with like-indexed roots forming
// continuous loci over eps (adjacent samples are optimally matched).
struct ComponentTable {
  ComponentId component;
  TreeParams params;
  std::vector<EpsSample> samples;

  int generation() const { return component.generation; }
  double eps_min() const { return samples.back().eps; }
  double eps_max() const { return samples.front().eps; }

  // Componentwise linear interpolation between the bracketing samples; eps
  // outside the sampled range clamps to the nearest endpoint (sets *clamped).
  void interpolate_into(double eps, std::vector<Complex>& zeros, std::vector<Complex>& poles,
                        bool* clamped = nullptr) const;
};

HalfOrderRational interpolate(const ComponentTable& table, double eps, bool* clamped = nullptr);

// Minimal-total-distance pairing between equal-length root sets (exact
// assignment). Returns perm with next[perm[i]] matched to prev[i].
std::vector<std::size_t> match_roots(std::span<const Complex> prev, std::span<const Complex> next);

// Builds the 500-sample locus table for one component: solves in order
// a = 1, 2, ... (eps descending from 1), warm-starting each solve from the
// previous sample and matching root order for locus continuity.
ComponentTable build_component_table(const ComponentId& component, const TreeParams& params);

struct PoleZeroDatabase {
  TreeParams params;
  int max_generation = 0;
  std::vector<ComponentTable> tables;  // candidate_set order

  const ComponentTable& table_for(const ComponentId& component) const;
};

PoleZeroDatabase build_database(const TreeParams& params, int max_generation, int threads = 0);

// Line-oriented text format, 17 significant digits, lossless round trip.
void save_database(const PoleZeroDatabase& db, const std::filesystem::path& path);
PoleZeroDatabase load_database(const std::filesystem::path& path);

}
