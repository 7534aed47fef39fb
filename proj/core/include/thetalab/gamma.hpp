#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetalab {

class GammaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GammaEntry {
  std::string name;
  std::int64_t value = 0;
  std::string source;
};

struct GammaTable {
  int genus = 0;
  std::int64_t dim_i2 = 0;
  std::int64_t sym2_i2 = 0;
  std::int64_t corank_phi2 = 0;
  std::int64_t ker_m = 0;
  std::int64_t gamma00 = 0;
  std::int64_t gamma00_2 = 0;
  std::int64_t rank_phi2 = 0;
  std::int64_t gamma11 = 0;
  std::int64_t gamma000 = 0;

  std::vector<GammaEntry> entries() const;
  bool chain_consistent() const;
};

std::int64_t binomial(std::int64_t n, std::int64_t k);

GammaTable gamma_dimensions(int g, std::int64_t corank_phi2, std::int64_t ker_m_dim, std::int64_t dim_i2);

}  // namespace thetalab
