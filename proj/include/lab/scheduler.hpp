#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace lab {

enum class SchedulerKind { linear, optimal, cosine, piecewise };

std::string to_string(SchedulerKind kind);
SchedulerKind scheduler_kind_from_string(const std::string& name);

// Time change g driving the forward noising and every backward grid.
// Guarantees g(0) = 0, g(T) = Tprime (1e-12 relative), g nondecreasing.
// Immutable after construction; safe for concurrent reads.
class Scheduler {
public:
    static Scheduler linear(double T, double Tprime);
    // g*(t) = -ln(1 - (t/T)(1 - e^{-Tprime})), the variational optimum;
    // satisfies g'' = (g')^2 pointwise.
    static Scheduler optimal(double T, double Tprime);
    // g(t) = -ln cos(pi a t / (2T)) with cos(pi a / 2) = e^{-Tprime}.
    // The t/T rescaling for general horizons is our convention. For
    // Tprime > 36 the parameter a is clamped below 1 (with a warning) since
    // e^{-Tprime} is below double-precision resolution of arccos near 1.
    static Scheduler cosine(double T, double Tprime);
    // Linear interpolation of (t, g) knots; first knot must be (0, 0).
    // Convexity is checked and warned about, not enforced.
    static Scheduler piecewise(double T, std::vector<std::pair<double, double>> knots);

    double eval_g(double t) const;
    // dg/dt; for the piecewise kind this is the slope of the active segment,
    // taken from the right at interior knots.
    double eval_gdot(double t) const;

    SchedulerKind kind() const { return kind_; }
    double horizon() const { return T_; }
    double terminal() const { return Tprime_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    nlohmann::json to_json() const;
    static Scheduler from_json(const nlohmann::json& j);

private:
    Scheduler() = default;

    SchedulerKind kind_ = SchedulerKind::linear;
    double T_ = 1.0;
    double Tprime_ = 1.0;
    double contraction_ = 0.0; // optimal: (1 - e^{-T'})/T
    double cos_rate_ = 0.0;    // cosine: pi a / (2T)
    std::vector<std::pair<double, double>> knots_;
};

// max_t |g''(t) - g'(t)^2| over an n-point grid, g'' by central finite
// differences of eval_gdot with a locally scaled step (the derivative grows
// like e^{Tprime} near t = T, so a fixed step loses all precision there).
double euler_lagrange_residual_max(const Scheduler& s, int n_grid);

} // namespace lab
