#pragma once

#include <cstdint>
#include <random>

namespace fractree {

// splitmix64 finalizer; used to derive independent seeds from a master seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ (a + 0x100000001b3ULL));
  h = mix64(h ^ (b + 0xcbf29ce484222325ULL));
  h = mix64(h ^ (c + 0x9ae16a3b2f90404fULL));
  return h;
}

// mt19937_64 with hand-rolled uniform mappings so streams are identical
// across standard libraries (distribution objects are not portable).
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1) with 53 random bits.
  double next_unit() { return double(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (-amplitude, amplitude).
  double next_symmetric(double amplitude) { return (2.0 * next_unit() - 1.0) * amplitude; }

 private:
  std::mt19937_64 engine_;
};

}
