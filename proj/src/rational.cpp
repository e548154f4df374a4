#include "termcut/rational.hpp"

#include <algorithm>

namespace termcut {

BigInt binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (unsigned i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

}  // namespace termcut
