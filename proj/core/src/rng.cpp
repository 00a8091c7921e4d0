#include "qvc/rng.hpp"

namespace qvc {

namespace {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream * 0xd1342543de82ef95ULL + 1));
}

double uniform_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = gen();
  while (v >= limit) v = gen();
  return static_cast<std::size_t>(v % n);
}

double uniform_angle(std::mt19937_64& gen) {
  return uniform_double(gen) * 6.283185307179586476925286766559;
}

}  // namespace qvc
