#pragma once

#include <cstdint>

namespace ils {

// SplitMix64: 64-bit shift/multiply generator with period 2^64.
// next():   state += 0x9E3779B97F4A7C15; z = state;
//           z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//           z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//           return z ^ (z >> 31);
// uniform(): (next() >> 11) * 2^-53, in [0, 1).
// gaussian(): Box-Muller pairs; r = sqrt(-2 ln(1 - u1)), th = 2*pi*u2,
//           returns r*cos(th) and caches r*sin(th) for the next call.
// The integer and uniform streams are bit-exact by construction; gaussian
// values additionally depend on the platform's log/cos/sin.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();            // [0, 1)
  double gaussian();           // standard normal
  long long uniform_int(long long lo, long long hi);  // inclusive bounds

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Deterministic stream splitting: hashes the parts into one sub-seed so
// parallel and serial benchmark runs draw identical numbers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

}  // namespace ils
