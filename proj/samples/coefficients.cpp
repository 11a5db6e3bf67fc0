// Dumps the centred, interpolatory and interface differentiation tables
// for p = 1..3 as CSV.

#include "atweno/numdiff.hpp"

#include <iostream>
#include <vector>

int main() {
  using namespace atweno::numdiff;
  std::vector<CoefficientTable> tables;
  for (int p = 1; p <= 3; ++p) {
    for (int k = 0; k <= 2 * p; ++k) tables.push_back(centered_diff_coeffs(p, k));
    for (int k = 0; k < 2 * p; ++k) tables.push_back(interp_diff_coeffs(p, k, Rational(1, 2)));
    for (int k = 0; k < 2 * p; ++k) tables.push_back(interface_coeffs(p, k));
  }
  write_csv(std::cout, tables);
}
