#include "lab/marginals.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "lab/errors.hpp"

namespace lab {
namespace {

constexpr double kTwoPi = 6.283185307179586;

void check_finite(std::span<const double> x, const char* who) {
    for (double v : x)
        if (!std::isfinite(v)) throw validation_error(std::string(who) + ": non-finite input");
}

} // namespace

TargetSpec TargetSpec::gaussian(std::vector<double> mu, double sigma2) {
    if (mu.empty()) throw validation_error("gaussian target: empty mean vector");
    if (!(sigma2 > 0.0)) throw validation_error("gaussian target: sigma2 must be positive");
    check_finite(mu, "gaussian target");
    TargetSpec t;
    t.variant = Variant::gaussian;
    t.dim = static_cast<int>(mu.size());
    t.mu = std::move(mu);
    t.sigma2 = sigma2;
    return t;
}

TargetSpec TargetSpec::empirical(std::vector<std::vector<double>> points) {
    if (points.empty()) throw validation_error("empirical target: need at least 1 point");
    std::size_t d = points.front().size();
    if (d == 0) throw validation_error("empirical target: zero-dimensional points");
    for (const auto& p : points) {
        if (p.size() != d) throw validation_error("empirical target: mixed dimensions");
        check_finite(p, "empirical target");
    }
    TargetSpec t;
    t.variant = Variant::empirical;
    t.dim = static_cast<int>(d);
    t.sigma2 = 0.0;
    t.points = std::move(points);
    return t;
}

nlohmann::json TargetSpec::to_json() const {
    nlohmann::json j;
    if (variant == Variant::gaussian) {
        j["variant"] = "gaussian";
        j["mu"] = mu;
        j["sigma2"] = sigma2;
    } else {
        j["variant"] = "empirical";
        j["points"] = points;
    }
    return j;
}

TargetSpec TargetSpec::from_json(const nlohmann::json& j) {
    std::string v = j.at("variant").get<std::string>();
    if (v == "gaussian")
        return gaussian(j.at("mu").get<std::vector<double>>(), j.at("sigma2").get<double>());
    if (v == "empirical")
        return empirical(j.at("points").get<std::vector<std::vector<double>>>());
    throw validation_error("target from_json: unknown variant " + v);
}

std::vector<double> Marginal::mean() const {
    std::vector<double> out(dim, 0.0);
    for (std::size_t j = 0; j < n_components(); ++j) {
        auto c = center(j);
        for (int k = 0; k < dim; ++k) out[k] += weights[j] * c[k];
    }
    return out;
}

double InvariantMeasure::log_density(std::span<const double> x) const {
    double q = 0.0;
    for (double v : x) q += v * v;
    return -q - 0.5 * dim * std::log(kTwoPi * 0.5);
}

std::vector<double> InvariantMeasure::score(std::span<const double> x) const {
    std::vector<double> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = -2.0 * x[i];
    return s;
}

std::vector<double> InvariantMeasure::sample(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<double> x(dim);
    for (auto& v : x) v = normal(rng);
    return x;
}

Marginal marginal_at_g(const TargetSpec& target, double g_value) {
    if (!(g_value >= 0.0)) throw validation_error("marginal_at_g: g must be >= 0");
    Marginal m;
    m.g_t = g_value;
    m.dim = target.dim;
    double contraction = std::exp(-g_value);
    if (target.variant == TargetSpec::Variant::gaussian) {
        m.variance = 0.5 + std::exp(-2.0 * g_value) * (target.sigma2 - 0.5);
        m.weights = {1.0};
        m.centers.resize(target.dim);
        for (int k = 0; k < target.dim; ++k) m.centers[k] = contraction * target.mu[k];
    } else {
        if (g_value <= 0.0)
            throw numerical_error("marginal_at_g: empirical marginal degenerate at g = 0");
        m.variance = 0.5 + std::exp(-2.0 * g_value) * (0.0 - 0.5); // = (1 - e^{-2g})/2
        std::size_t n = target.points.size();
        m.weights.assign(n, 1.0 / static_cast<double>(n));
        m.centers.resize(n * target.dim);
        for (std::size_t j = 0; j < n; ++j)
            for (int k = 0; k < target.dim; ++k)
                m.centers[j * target.dim + k] = contraction * target.points[j][k];
    }
    return m;
}

Marginal marginal_at(const TargetSpec& target, const Scheduler& s, double t,
                     double empirical_time_floor) {
    if (target.variant == TargetSpec::Variant::empirical && t < empirical_time_floor)
        throw numerical_error("marginal_at: empirical marginal requested below the time floor");
    Marginal m = marginal_at_g(target, s.eval_g(t));
    m.t = t;
    return m;
}

namespace {

// log posterior weights (up to common shift) and their max.
void posterior_logits(const Marginal& m, std::span<const double> x,
                      std::vector<double>& logits, double& max_logit) {
    std::size_t n = m.n_components();
    logits.resize(n);
    max_logit = -std::numeric_limits<double>::infinity();
    double inv2v = 1.0 / (2.0 * m.variance);
    for (std::size_t j = 0; j < n; ++j) {
        auto c = m.center(j);
        double q = 0.0;
        for (int k = 0; k < m.dim; ++k) {
            double d = x[k] - c[k];
            q += d * d;
        }
        double l = std::log(m.weights[j]) - q * inv2v;
        logits[j] = l;
        if (l > max_logit) max_logit = l;
    }
}

} // namespace

double log_density(const Marginal& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.dim)
        throw validation_error("log_density: dimension mismatch");
    check_finite(x, "log_density");
    std::vector<double> logits;
    double max_logit;
    posterior_logits(m, x, logits, max_logit);
    double acc = 0.0;
    for (double l : logits) acc += std::exp(l - max_logit);
    double norm = -0.5 * m.dim * std::log(kTwoPi * m.variance);
    return max_logit + std::log(acc) + norm;
}

std::vector<double> score_m(const Marginal& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.dim)
        throw validation_error("score_m: dimension mismatch");
    check_finite(x, "score_m");
    std::vector<double> logits;
    double max_logit;
    posterior_logits(m, x, logits, max_logit);
    // posterior mean of centers
    std::vector<double> pm(m.dim, 0.0);
    double z = 0.0;
    const double drop = std::log(1e-300);
    for (std::size_t j = 0; j < m.n_components(); ++j) {
        double l = logits[j] - max_logit;
        if (l < drop) continue;
        double w = std::exp(l);
        z += w;
        auto c = m.center(j);
        for (int k = 0; k < m.dim; ++k) pm[k] += w * c[k];
    }
    std::vector<double> s(m.dim);
    for (int k = 0; k < m.dim; ++k) s[k] = (pm[k] / z - x[k]) / m.variance;
    return s;
}

std::vector<double> score_p(const Marginal& m, std::span<const double> x) {
    std::vector<double> s = score_m(m, x);
    for (int k = 0; k < m.dim; ++k) s[k] += 2.0 * x[k];
    return s;
}

std::vector<double> sample(const Marginal& m, std::mt19937_64& rng, std::size_t n) {
    if (n < 1) throw validation_error("sample: n must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::discrete_distribution<std::size_t> pick(m.weights.begin(), m.weights.end());
    double sd = std::sqrt(m.variance);
    std::vector<double> out(n * m.dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = m.n_components() == 1 ? 0 : pick(rng);
        auto c = m.center(j);
        for (int k = 0; k < m.dim; ++k) out[i * m.dim + k] = c[k] + sd * normal(rng);
    }
    return out;
}

MeanSe relative_fisher_mc(const Marginal& m, std::mt19937_64& rng, std::size_t n) {
    if (n < 100) throw validation_error("relative_fisher_mc: n must be >= 100");
    std::vector<double> draws = sample(m, rng, n);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> x(draws.data() + i * m.dim, m.dim);
        std::vector<double> sp = score_p(m, x);
        double q = 0.0;
        for (double v : sp) q += v * v;
        vals[i] = q;
    }
    return mean_se(vals);
}

} // namespace lab
