#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "thetalab/scalar.hpp"

namespace thetalab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  Scalar scalar(const Field& f) { return Scalar::from_raw(f, next()); }
  Scalar nonzero_scalar(const Field& f);
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::mt19937_64 eng_;
};

// Stable child seed for a named sub-task.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

}  // namespace thetalab
