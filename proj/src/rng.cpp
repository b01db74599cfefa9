#include "sata/rng.hpp"

#include <stdexcept>

namespace sata {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kSplitSalt = 0xD1B54A32D192ED03ull;
}  // namespace

std::uint64_t mix64(std::uint64_t v) {
  v ^= v >> 30;
  v *= 0xBF58476D1CE4E5B9ull;
  v ^= v >> 27;
  v *= 0x94D049BB133111EBull;
  v ^= v >> 31;
  return v;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGamma);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_closed() { return 1.0 - next_double(); }

int Rng::next_int(int bound) {
  if (bound < 1) throw std::invalid_argument("Rng::next_int: bound must be >= 1");
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound));
}

Rng Rng::split(std::uint64_t key) const {
  return Rng(mix64(seed_ ^ mix64(key * kGamma + kSplitSalt)));
}

}  // namespace sata
