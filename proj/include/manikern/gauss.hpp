#ifndef MANIKERN_GAUSS_HPP
#define MANIKERN_GAUSS_HPP

#include <vector>

namespace manikern {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on
/// [-1, 1], alpha, beta > -1. Nodes ascend.
Rule1D gauss_jacobi(int n, double alpha, double beta);

} // namespace manikern

#endif
