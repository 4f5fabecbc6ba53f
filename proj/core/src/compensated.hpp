#pragma once

#include <cmath>
#include <complex>

namespace rmbmi::detail {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

struct CompensatedComplexSum {
  CompensatedSum re;
  CompensatedSum im;

  void add(std::complex<double> v) noexcept {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const noexcept { return {re.value(), im.value()}; }
};

}  // namespace rmbmi::detail
