#include "lab/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "lab/csv.hpp"
#include "lab/errors.hpp"
#include "lab/svg.hpp"

namespace lab {

void GaussianExperiment::validate() const {
    if (!(sigma2 > 0.0)) throw validation_error("gaussian experiment: sigma2 must be positive");
    if (K < 1) throw validation_error("gaussian experiment: K must be >= 1");
    if (!(delta >= 0.0 && delta < scheduler.horizon()))
        throw validation_error("gaussian experiment: need 0 <= delta < T");
}

std::vector<double> mean_recursion(const GaussianExperiment& e) {
    e.validate();
    const double T = e.scheduler.horizon();
    const double h = (T - e.delta) / e.K;
    std::vector<double> means(e.K + 1);
    means[0] = 0.0;
    for (int k = 0; k < e.K; ++k) {
        double gk = e.scheduler.eval_g(T - k * h);
        double gk1 = e.scheduler.eval_g(T - (k + 1) * h);
        double u = gk - gk1;
        double beta = 1.0 / (1.0 + std::exp(-2.0 * gk) * (2.0 * e.sigma2 - 1.0));
        double sbar = 2.0 * means[k] * (1.0 - beta) + 2.0 * beta * std::exp(-gk) * e.mu;
        double decay = std::exp(-u);
        means[k + 1] = means[k] * decay + sbar * (1.0 - decay);
    }
    return means;
}

std::vector<double> variance_recursion(const GaussianExperiment& e) {
    e.validate();
    const double T = e.scheduler.horizon();
    const double h = (T - e.delta) / e.K;
    std::vector<double> vars(e.K + 1);
    vars[0] = 0.5; // started at m*
    for (int k = 0; k < e.K; ++k) {
        double gk = e.scheduler.eval_g(T - k * h);
        double gk1 = e.scheduler.eval_g(T - (k + 1) * h);
        double u = gk - gk1;
        double beta = 1.0 / (1.0 + std::exp(-2.0 * gk) * (2.0 * e.sigma2 - 1.0));
        double decay = std::exp(-u);
        // X_{k+1} = A X_k + const + noise, A = e^{-u} + 2(1-beta)(1-e^{-u})
        double A = decay + 2.0 * (1.0 - beta) * (1.0 - decay);
        vars[k + 1] = A * A * vars[k] - 0.5 * std::expm1(-2.0 * u);
    }
    return vars;
}

double bias(const GaussianExperiment& e) {
    std::vector<double> means = mean_recursion(e);
    return e.mu * std::exp(-e.scheduler.eval_g(e.delta)) - means.back();
}

double bias_approx(const GaussianExperiment& e) {
    e.validate();
    if (e.sigma2 != 0.5)
        throw validation_error("bias_approx: only derived for sigma2 = 1/2");
    const double T = e.scheduler.horizon();
    const double h = (T - e.delta) / e.K;
    double acc = 0.0;
    for (int l = 1; l <= e.K; ++l) {
        double back = T - (l - 1) * h;
        double gd = e.scheduler.eval_gdot(back);
        acc += std::exp(-2.0 * e.scheduler.eval_g(back)) * gd * gd;
    }
    return 4.0 * e.mu * h * h * acc;
}

SchedulerComparison compare_schedulers(double mu, const std::vector<double>& sigma2_list,
                                       const std::vector<int>& K_list, double Tprime) {
    SchedulerComparison out;
    const std::pair<std::string, Scheduler> kinds[] = {
        {"linear", Scheduler::linear(1.0, Tprime)},
        {"optimal", Scheduler::optimal(1.0, Tprime)},
        {"cosine", Scheduler::cosine(1.0, Tprime)},
    };
    for (double s2 : sigma2_list) {
        if (!(s2 > 0.0)) throw validation_error("compare_schedulers: sigma2 must be positive");
        for (int K : K_list) {
            for (const auto& [name, sched] : kinds) {
                GaussianExperiment e;
                e.mu = mu;
                e.sigma2 = s2;
                e.scheduler = sched;
                e.K = K;
                double b = bias(e);
                out.rows.push_back({s2, K, name, b, std::abs(b)});
            }
        }
    }
    return out;
}

void SchedulerComparison::write_csv(const std::string& path) const {
    CsvTable table({"sigma2", "K", "scheduler", "bias", "abs_bias"});
    for (const auto& r : rows) {
        table.cell(r.sigma2)
            .cell(static_cast<std::int64_t>(r.K))
            .cell(r.scheduler)
            .cell(r.bias)
            .cell(r.abs_bias);
        table.end_row();
    }
    table.write(path);
}

void SchedulerComparison::write_svg(const std::string& path) const {
    // group rows: panel per sigma2, series per scheduler
    std::vector<double> sigmas;
    for (const auto& r : rows)
        if (std::find(sigmas.begin(), sigmas.end(), r.sigma2) == sigmas.end())
            sigmas.push_back(r.sigma2);
    std::vector<SvgPanel> panels;
    for (double s2 : sigmas) {
        SvgPanel panel;
        panel.title = "sigma2 = " + format_double(s2);
        panel.xlabel = "K";
        panel.ylabel = "|bias|";
        panel.logx = true;
        panel.logy = true;
        for (const char* name : {"linear", "optimal", "cosine"}) {
            SvgSeries series;
            series.label = name;
            for (const auto& r : rows)
                if (r.sigma2 == s2 && r.scheduler == name) {
                    series.x.push_back(r.K);
                    series.y.push_back(r.abs_bias);
                }
            panel.series.push_back(std::move(series));
        }
        panels.push_back(std::move(panel));
    }
    lab::write_svg(path, panels);
}

} // namespace lab
