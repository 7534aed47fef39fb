#include "thetalab/gamma.hpp"

namespace thetalab {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

GammaTable gamma_dimensions(int g, std::int64_t corank_phi2, std::int64_t ker_m_dim, std::int64_t dim_i2) {
  if (g < 2 || g > 40) throw GammaError("genus out of range");
  if (corank_phi2 < 0 || ker_m_dim < 0 || dim_i2 < 0) throw GammaError("negative input");
  if (dim_i2 != binomial(g - 2, 2)) throw GammaError("dim I(2) does not match a non-hyperelliptic canonical curve");
  GammaTable t;
  t.genus = g;
  t.dim_i2 = dim_i2;
  t.sym2_i2 = binomial(dim_i2 + 1, 2);
  t.corank_phi2 = corank_phi2;
  t.ker_m = ker_m_dim;
  t.gamma00 = (std::int64_t{1} << g) - 1 - binomial(g + 1, 2);
  t.gamma00_2 = t.gamma00 - binomial(g, 3);
  t.rank_phi2 = t.sym2_i2 - corank_phi2;
  t.gamma11 = t.gamma00_2 - t.rank_phi2;
  t.gamma000 = t.gamma11 + ker_m_dim;
  if (t.rank_phi2 < 0) throw GammaError("corank exceeds dim Sym2 I(2)");
  if (t.gamma00 < 0 || t.gamma00_2 < 0 || t.gamma11 < 0 || t.gamma000 < 0)
    throw GammaError("negative dimension in the gamma chain");
  if (!t.chain_consistent()) throw GammaError("inclusion chain violated");
  return t;
}

bool GammaTable::chain_consistent() const {
  return gamma00 >= gamma00_2 && gamma00_2 >= gamma11 && gamma11 >= 0 && gamma11 <= gamma000 &&
         gamma000 <= gamma00_2;
}

std::vector<GammaEntry> GammaTable::entries() const {
  return {
      {"dim I(2)", dim_i2, "input"},
      {"dim Sym2 I(2)", sym2_i2, "binomial"},
      {"corank phi2*", corank_phi2, "input"},
      {"dim ker m", ker_m, "input"},
      {"dim G00", gamma00, "2^g - 1 - C(g+1,2)"},
      {"dim G00^(2)", gamma00_2, "G00 - C(g,3)"},
      {"rank phi2*", rank_phi2, "Sym2 I(2) - corank"},
      {"dim G11", gamma11, "G00^(2) - rank phi2*"},
      {"dim G000", gamma000, "G11 + ker m"},
  };
}

}  // namespace thetalab
