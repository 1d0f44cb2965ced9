#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace pstlab {

// std::mt19937_64 is bit-specified by the standard, but the std::*_distribution
// adaptors are not. The helpers below keep draws reproducible across standard
// libraries.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent engine for stream `stream` derived from a user seed.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

// Exponential holding time with unit mean.
inline double unit_exponential(std::mt19937_64& gen) {
  return -std::log1p(-uniform01(gen));
}

template <typename T>
void shuffle(std::span<T> values, std::mt19937_64& gen) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = uniform_index(gen, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace pstlab
