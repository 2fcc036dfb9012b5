#include "finegrad/bigint.hpp"

namespace finegrad {

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

} // namespace finegrad
