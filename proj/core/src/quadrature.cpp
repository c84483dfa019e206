#include "qhe/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qhe {

// Nodes are roots of P_n found by Newton iteration from the Chebyshev
// estimate; weights w = 2 / ((1 - x^2) P_n'(x)^2).
QuadratureRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Bonnet recurrence for P_n(x) and P_{n-1}(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
    QuadratureRule base = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        base.nodes[i] = mid + half * base.nodes[i];
        base.weights[i] *= half;
    }
    return base;
}

QuadratureRule composite_gauss_legendre(int order,
                                        const std::vector<double>& breakpoints)
{
    if (breakpoints.size() < 2)
        throw std::invalid_argument("composite_gauss_legendre: need >= 2 breakpoints");

    QuadratureRule base = gauss_legendre(order);
    QuadratureRule rule;
    rule.nodes.reserve(order * (breakpoints.size() - 1));
    rule.weights.reserve(order * (breakpoints.size() - 1));
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p];
        const double b = breakpoints[p + 1];
        if (!(b > a))
            throw std::invalid_argument("composite_gauss_legendre: breakpoints not ascending");
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (int i = 0; i < order; ++i) {
            rule.nodes.push_back(mid + half * base.nodes[i]);
            rule.weights.push_back(half * base.weights[i]);
        }
    }
    return rule;
}

}  // namespace qhe
