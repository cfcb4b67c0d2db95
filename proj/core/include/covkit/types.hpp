#pragma once

#include <complex>
#include <vector>

namespace covkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Integer power with the convention 0^0 = 1.
inline Complex ipow(Complex base, unsigned exponent) {
  Complex result{1.0, 0.0};
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent != 0) base *= base;
  }
  return result;
}

}  // namespace covkit
