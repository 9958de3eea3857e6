#pragma once

#include <string>
#include <vector>

#include "lab/scheduler.hpp"

namespace lab {

// Closed-form 1-D analysis of the discretized reversal for N(mu, sigma2)
// targets. The frozen drift is affine in the step-start state, so the mean
// (and, as a diagnostic, the variance) propagates exactly through the
// per-interval OU kernels; no sampling enters.
struct GaussianExperiment {
    double mu = 1.0;
    double sigma2 = 0.5;
    Scheduler scheduler = Scheduler::linear(1.0, 5.0);
    int K = 1;
    double delta = 0.0;

    void validate() const;
};

// E[Xbar_{t_k}] for k = 0..K, starting from E[Xbar_0] = 0. Per step
//   m_{k+1} = m_k e^{-u_k} + Sbar_k (1 - e^{-u_k}),
//   u_k = g(T-t_k) - g(T-t_{k+1}),
//   Sbar_k = E[score_p at the frozen marginal] = 2 m_k (1-beta_k) + 2 beta_k e^{-g_k} mu,
//   beta_k = 1/(1 + e^{-2 g_k}(2 sigma2 - 1)).
// For sigma2 = 1/2, beta = 1 and Sbar_k is the constant 2 e^{-g_k} mu.
std::vector<double> mean_recursion(const GaussianExperiment& e);

// Variance diagnostic by affine-Gaussian propagation (not used for bias).
std::vector<double> variance_recursion(const GaussianExperiment& e);

// mu e^{-g(delta)} - mean_recursion(e)[K]; with delta = 0 this is the
// discretization bias mu - E[Xbar_T].
double bias(const GaussianExperiment& e);

// The O(h) product form 4 mu h^2 sum_l e^{-2 g(T-t_{l-1})} |gdot(T-t_{l-1})|^2.
// Only derived for sigma2 = 1/2. Note: this display overstates the exact
// bias constant by a factor ~4 (see bias tests); it is kept verbatim as the
// comparison quantity it is.
double bias_approx(const GaussianExperiment& e);

struct SchedulerComparison {
    struct Row {
        double sigma2;
        int K;
        std::string scheduler;
        double bias;
        double abs_bias;
    };
    std::vector<Row> rows;

    // CSV schema: sigma2,K,scheduler,bias,abs_bias
    void write_csv(const std::string& path) const;
    // log-log |bias| vs K, one panel per sigma2, one series per scheduler
    void write_svg(const std::string& path) const;
};

// |bias| per (sigma2, K, scheduler in {linear, optimal, cosine}) at horizon
// T = 1 and terminal Tprime.
SchedulerComparison compare_schedulers(double mu, const std::vector<double>& sigma2_list,
                                       const std::vector<int>& K_list, double Tprime);

} // namespace lab
