#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lab/marginals.hpp"
#include "lab/scheduler.hpp"
#include "lab/stats.hpp"

namespace lab {

enum class Integrator { exact_ou, euler };

// Everything defining one backward run. Uniform grid t_k = k h, h = (T - delta)/K.
// Paths are independent; the run is a parallel map over path indices with
// per-path RNG streams derived from (seed, path index).
struct ReverseConfig {
    double T = 1.0;
    double delta = 0.0;
    int K = 1;
    Scheduler scheduler = Scheduler::linear(1.0, 1.0);
    Integrator integrator = Integrator::exact_ou;
    std::uint64_t seed = 0;
    int euler_substeps = 100; // per interval, integrator == euler only

    void validate() const;
    double step() const { return (T - delta) / K; }

    nlohmann::json to_json() const;
};

// Provider of the frozen drift target S*_u(x) at backward time u:
//   exact_p   - the p-score of the true marginal m_u,
//   perturbed - exact plus eps sin(wave . x) 1/sqrt(d), a bounded Lipschitz
//               perturbation whose squared error in the step-weighted score
//               matching sum is at most eps^2 (g(T) - g(delta)).
class ScoreModel {
public:
    static ScoreModel exact_p(TargetSpec target, Scheduler scheduler);
    static ScoreModel perturbed(TargetSpec target, Scheduler scheduler, double eps,
                                std::vector<double> wave);

    // Score field at backward time u, evaluated against the cached marginal.
    class Frozen {
    public:
        void eval(std::span<const double> x, std::span<double> out) const;
        std::vector<double> eval(std::span<const double> x) const;

    private:
        friend class ScoreModel;
        Marginal marginal_;
        double eps_ = 0.0;
        std::vector<double> wave_;
        double inv_sqrt_d_ = 1.0;
    };

    Frozen at(double backward_time) const;

    const TargetSpec& target() const { return target_; }
    const Scheduler& scheduler() const { return scheduler_; }
    double eps() const { return eps_; }
    bool is_perturbed() const { return perturbed_; }

    nlohmann::json to_json() const;

private:
    TargetSpec target_;
    Scheduler scheduler_ = Scheduler::linear(1.0, 1.0);
    bool perturbed_ = false;
    double eps_ = 0.0;
    std::vector<double> wave_;
};

// Mean multiplier / variance of the per-interval OU kernel over a g-span u:
//   X' ~ N(x e^{-u} + s (1 - e^{-u}), (1 - e^{-2u})/2 I).
struct OuStepMoments {
    double decay;     // e^{-u}
    double variance;  // (1 - e^{-2u})/2
};
OuStepMoments ou_step_moments(double u);

// One draw from the exact conditional kernel between grid times t_k < t_next,
// with the score frozen at s_frozen. u = g(T - t_k) - g(T - t_next) must be
// nonnegative (monotone scheduler).
std::vector<double> exact_ou_step(std::span<const double> x, std::span<const double> s_frozen,
                                  const Scheduler& s, double T, double t_k, double t_next,
                                  std::mt19937_64& rng);

// n_paths samples of the discretized time reversal at time T - delta. Starts
// at m* = N(0, 1/2 I); per interval the score is evaluated once at the grid
// start point and the state advanced by the exact OU kernel (or, for
// validation, Euler-Maruyama substeps of the same frozen-drift SDE).
struct SampleSet {
    std::size_t n = 0;
    int dim = 1;
    std::vector<double> data; // flat n x dim

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * dim, static_cast<std::size_t>(dim)};
    }
    MeanSe coordinate_mean_se(int k) const;
};

SampleSet run_reverse(const ScoreModel& score, const ReverseConfig& cfg, std::size_t n_paths);

// Fine Euler-Maruyama reference for the continuous reversal: the exact score
// is re-evaluated at every substep (not frozen). cfg.K is the substep count.
SampleSet run_reverse_reference(const TargetSpec& target, const ReverseConfig& cfg,
                                std::size_t n_paths);

// Monte Carlo value of the step-weighted score-matching error
//   sum_k [g(T-t_k) - g(T-t_{k+1})] E_{m_{T-t_k}} |S*(X) - score_p(X)|^2
// for this model (zero for exact_p up to MC noise).
MeanSe score_matching_error_mc(const ScoreModel& model, const ReverseConfig& cfg,
                               std::size_t n_per_step, std::uint64_t seed);

// CSV dump (one row per path, d columns) plus a JSON sidecar with the full
// config and score model, for provenance.
void write_sample_set(const std::string& csv_path, const SampleSet& samples,
                      const ReverseConfig& cfg, const ScoreModel& score);

} // namespace lab
