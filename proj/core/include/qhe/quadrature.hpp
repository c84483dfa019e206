#ifndef QHE_QUADRATURE_HPP
#define QHE_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace qhe {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
QuadratureRule gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite rule: an order-n panel on each interval
// [breakpoints[i], breakpoints[i+1]]. Breakpoints must be ascending.
QuadratureRule composite_gauss_legendre(int order,
                                        const std::vector<double>& breakpoints);

}  // namespace qhe

#endif
