#include "rutv/random.hpp"

#include <string>

#include "rutv/error.hpp"

namespace rutv {

Matrix gaussian(Index m, Index n, RngStream& rng) {
  if (m == 0 || n == 0) {
    throw DimensionError("gaussian: zero dimension " + std::to_string(m) + "x" + std::to_string(n));
  }
  Matrix g(m, n);
  for (double& v : g.values()) v = rng.normal();
  return g;
}

}  // namespace rutv
