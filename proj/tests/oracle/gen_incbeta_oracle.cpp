// Writes the incomplete Beta reference table to stdout:
//   v <TAB> j <TAB> alpha <TAB> I(v, j, alpha) to 40 digits
// computed with Boost's ibeta in 50-digit arithmetic.

#include <cstdio>
#include <iostream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

using mp50 = boost::multiprecision::cpp_bin_float_50;

int main() {
  const double alphas[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.75, 10.0};
  const int js[] = {1, 2, 5, 17, 40, 41, 100, 333, 1000, 4096, 20000};
  const double offsets[] = {0.05, 0.5, 2.0, 8.0};
  std::cout << "v\tj\talpha\tI\n";
  for (double alpha : alphas) {
    for (int j : js) {
      for (double c : offsets) {
        // v = 1 − c/j covers the hard-edge scaling; also a few fixed points
        for (double v : {1.0 - c / j, c / 8.0}) {
          if (!(v > 0.0 && v < 1.0)) continue;
          const mp50 value = boost::math::ibeta(mp50(j), mp50(alpha), mp50(v));
          char head[80];
          std::snprintf(head, sizeof head, "%.17g\t%d\t%.17g\t", v, j, alpha);
          std::cout << head << value.str(40, std::ios_base::scientific) << '\n';
        }
      }
    }
  }
}
