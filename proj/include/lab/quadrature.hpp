#pragma once

#include <vector>

namespace lab {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule rescaled for the standard normal weight:
//   int f(z) N(z; 0, 1) dz  ~=  sum_i w_i f(z_i).
// Cached per order; order >= 2.
const Quadrature& gauss_hermite(int order);

// Gauss-Legendre rule on [-1, 1]; cached per order.
const Quadrature& gauss_legendre(int order);

// int_a^b f(t) dt with the cached 16-point Gauss-Legendre rule.
template <typename Fn>
double integrate_gl16(Fn&& f, double a, double b) {
    const Quadrature& q = gauss_legendre(16);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        acc += q.weights[i] * f(mid + half * q.nodes[i]);
    return acc * half;
}

} // namespace lab
