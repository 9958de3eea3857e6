#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lab/scheduler.hpp"
#include "lab/stats.hpp"

namespace lab {

// Data law m0: an isotropic Gaussian N(mu, sigma2 I) or an empirical point
// cloud (equal-weight atoms). Immutable.
struct TargetSpec {
    enum class Variant { gaussian, empirical };

    Variant variant = Variant::gaussian;
    int dim = 1;
    std::vector<double> mu;                 // gaussian
    double sigma2 = 1.0;                    // gaussian, per coordinate
    std::vector<std::vector<double>> points; // empirical

    static TargetSpec gaussian(std::vector<double> mu, double sigma2);
    static TargetSpec empirical(std::vector<std::vector<double>> points);

    std::size_t n_points() const { return variant == Variant::empirical ? points.size() : 0; }

    nlohmann::json to_json() const;
    static TargetSpec from_json(const nlohmann::json& j);
};

// Law of the scheduled forward diffusion at one time: an isotropic Gaussian
// mixture with centers e^{-g} x_i (or the single center e^{-g} mu) and common
// variance 1/2 + e^{-2g}(sigma2 - 1/2), sigma2 = 0 for empirical targets.
struct Marginal {
    double t = 0.0;
    double g_t = 0.0;
    int dim = 1;
    double variance = 0.5;
    std::vector<double> weights;  // sum to 1
    std::vector<double> centers;  // flat, n_components x dim

    std::size_t n_components() const { return weights.size(); }
    std::span<const double> center(std::size_t j) const {
        return {centers.data() + j * dim, static_cast<std::size_t>(dim)};
    }
    // Mixture mean, exact (weight-sum of centers).
    std::vector<double> mean() const;
};

// Stationary law N(0, 1/2 I) of the scheduled forward dynamics.
struct InvariantMeasure {
    int dim = 1;
    double log_density(std::span<const double> x) const;
    // grad log density = -2x
    std::vector<double> score(std::span<const double> x) const;
    std::vector<double> sample(std::mt19937_64& rng) const;
};

// Forward marginal in g-coordinates. Empirical targets are singular at g = 0;
// callers must stay above it (enforced by the time overload's floor).
Marginal marginal_at_g(const TargetSpec& target, double g_value);

// Marginal at time t under scheduler s. For empirical targets t must be at
// least `empirical_time_floor` (the t = 0 mixture is a sum of Dirac masses).
Marginal marginal_at(const TargetSpec& target, const Scheduler& s, double t,
                     double empirical_time_floor = 1e-6);

// log m(x), stable log-sum-exp over components.
double log_density(const Marginal& m, std::span<const double> x);

// grad log m(x) = (posterior mean of centers - x) / variance. Posterior
// weights are computed with a max shift; components below relative weight
// 1e-300 drop out.
std::vector<double> score_m(const Marginal& m, std::span<const double> x);

// grad log(m/m*) = score_m(x) + 2x.
std::vector<double> score_p(const Marginal& m, std::span<const double> x);

// n i.i.d. draws, written one per row into a flat n x dim vector.
std::vector<double> sample(const Marginal& m, std::mt19937_64& rng, std::size_t n);

// Monte Carlo estimate of I(m | m*) = E_m |score_p(X)|^2 (relative Fisher
// information against N(0, 1/2 I)). The variance of this estimator blows up
// as the mixture sharpens (small t for empirical targets); the standard error
// is reported, not bounded.
MeanSe relative_fisher_mc(const Marginal& m, std::mt19937_64& rng, std::size_t n);

} // namespace lab
