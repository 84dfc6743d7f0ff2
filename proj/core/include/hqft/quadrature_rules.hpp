#pragma once

#include <vector>

namespace hqft {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch. Legendre on [-1, 1]; Hermite for the weight exp(-x^2 / 2)
// normalised to total mass 1 (probabilists' convention).
Rule1D gauss_legendre(int n);
Rule1D gauss_hermite_standard(int n);
// Weight u^{beta} on [0, 1], beta > -1.
Rule1D gauss_jacobi_unit(int n, double beta);

}  // namespace hqft
