#include "lab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lab/errors.hpp"

namespace lab {
namespace {

// Physicists' Gauss-Hermite (weight e^{-x^2}) by Newton iteration on the
// normalized recurrence. Nodes/weights then rescaled to the N(0,1) weight:
// z = sqrt(2) x, w /= sqrt(pi).
Quadrature build_hermite(int n) {
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double eps = 3e-15;
    int m = (n + 1) / 2;
    double z = 0.0, r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r1;
        else if (i == 3)
            z = 1.91 * z - 0.91 * r1;
        else
            z = 2.0 * z - r2;
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = 0.7511255444649425; // pi^{-1/4}
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) break;
        }
        q.nodes[i] = z;
        q.nodes[n - 1 - i] = -z;
        q.weights[i] = 2.0 / (pp * pp);
        q.weights[n - 1 - i] = q.weights[i];
        r2 = r1;
        r1 = r0;
        r0 = z;
    }
    const double inv_sqrt_pi = 0.5641895835477563;
    for (int i = 0; i < n; ++i) {
        q.nodes[i] *= std::sqrt(2.0);
        q.weights[i] *= inv_sqrt_pi;
    }
    return q;
}

Quadrature build_legendre(int n) {
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        q.nodes[i] = -z;
        q.nodes[n - 1 - i] = z;
        q.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        q.weights[n - 1 - i] = q.weights[i];
    }
    return q;
}

std::mutex cache_mutex;

} // namespace

const Quadrature& gauss_hermite(int order) {
    if (order < 2) throw validation_error("gauss_hermite: order must be >= 2");
    static std::map<int, Quadrature> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_hermite(order)).first;
    return it->second;
}

const Quadrature& gauss_legendre(int order) {
    if (order < 2) throw validation_error("gauss_legendre: order must be >= 2");
    static std::map<int, Quadrature> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_legendre(order)).first;
    return it->second;
}

} // namespace lab
