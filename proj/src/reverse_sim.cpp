#include "lab/reverse_sim.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "lab/csv.hpp"
#include "lab/errors.hpp"
#include "lab/parallel.hpp"
#include "lab/rng.hpp"

namespace lab {

void ReverseConfig::validate() const {
    if (!(T > 0.0)) throw validation_error("reverse config: T must be positive");
    if (!(delta >= 0.0) || !(delta < T))
        throw validation_error("reverse config: need 0 <= delta < T");
    if (K < 1) throw validation_error("reverse config: K must be >= 1");
    if (integrator == Integrator::euler && euler_substeps < 1)
        throw validation_error("reverse config: euler_substeps must be >= 1");
    if (scheduler.horizon() != T)
        throw validation_error("reverse config: scheduler horizon differs from T");
}

nlohmann::json ReverseConfig::to_json() const {
    nlohmann::json j;
    j["T"] = T;
    j["delta"] = delta;
    j["K"] = K;
    j["scheduler"] = scheduler.to_json();
    j["integrator"] = integrator == Integrator::exact_ou ? "exact_ou" : "euler";
    j["seed"] = seed;
    if (integrator == Integrator::euler) j["euler_substeps"] = euler_substeps;
    return j;
}

ScoreModel ScoreModel::exact_p(TargetSpec target, Scheduler scheduler) {
    ScoreModel m;
    m.target_ = std::move(target);
    m.scheduler_ = std::move(scheduler);
    return m;
}

ScoreModel ScoreModel::perturbed(TargetSpec target, Scheduler scheduler, double eps,
                                 std::vector<double> wave) {
    if (!(eps >= 0.0)) throw validation_error("score model: eps must be >= 0");
    if (wave.size() != static_cast<std::size_t>(target.dim))
        throw validation_error("score model: wave dimension mismatch");
    ScoreModel m;
    m.target_ = std::move(target);
    m.scheduler_ = std::move(scheduler);
    m.perturbed_ = true;
    m.eps_ = eps;
    m.wave_ = std::move(wave);
    return m;
}

ScoreModel::Frozen ScoreModel::at(double backward_time) const {
    Frozen f;
    f.marginal_ = target_.variant == TargetSpec::Variant::empirical
                      ? marginal_at(target_, scheduler_, backward_time)
                      : marginal_at_g(target_, scheduler_.eval_g(backward_time));
    f.marginal_.t = backward_time;
    if (perturbed_) {
        f.eps_ = eps_;
        f.wave_ = wave_;
        f.inv_sqrt_d_ = 1.0 / std::sqrt(static_cast<double>(target_.dim));
    }
    return f;
}

void ScoreModel::Frozen::eval(std::span<const double> x, std::span<double> out) const {
    std::vector<double> s = score_p(marginal_, x);
    if (eps_ > 0.0) {
        double phase = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) phase += wave_[k] * x[k];
        double bump = eps_ * std::sin(phase) * inv_sqrt_d_;
        for (auto& v : s) v += bump;
    }
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k];
}

std::vector<double> ScoreModel::Frozen::eval(std::span<const double> x) const {
    std::vector<double> out(x.size());
    eval(x, out);
    return out;
}

nlohmann::json ScoreModel::to_json() const {
    nlohmann::json j;
    j["variant"] = perturbed_ ? "perturbed" : "exact_p";
    j["target"] = target_.to_json();
    j["scheduler"] = scheduler_.to_json();
    if (perturbed_) {
        j["eps"] = eps_;
        j["wave"] = wave_;
    }
    return j;
}

OuStepMoments ou_step_moments(double u) {
    if (u < 0.0) throw numerical_error("ou step: negative g-span (non-monotone scheduler?)");
    OuStepMoments m;
    m.decay = std::exp(-u);
    m.variance = -0.5 * std::expm1(-2.0 * u); // (1 - e^{-2u})/2, accurate for small u
    return m;
}

std::vector<double> exact_ou_step(std::span<const double> x, std::span<const double> s_frozen,
                                  const Scheduler& s, double T, double t_k, double t_next,
                                  std::mt19937_64& rng) {
    if (!(t_k < t_next)) throw validation_error("exact_ou_step: need t_k < t_next");
    double u = s.eval_g(T - t_k) - s.eval_g(T - t_next);
    OuStepMoments mom = ou_step_moments(u);
    double sd = std::sqrt(mom.variance);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = x[k] * mom.decay + s_frozen[k] * (1.0 - mom.decay) + sd * normal(rng);
    return out;
}

MeanSe SampleSet::coordinate_mean_se(int k) const {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = data[i * dim + k];
    return mean_se(col);
}

SampleSet run_reverse(const ScoreModel& score, const ReverseConfig& cfg, std::size_t n_paths) {
    cfg.validate();
    if (score.scheduler().to_json() != cfg.scheduler.to_json())
        throw validation_error("run_reverse: score model scheduler differs from config");
    if (score.target().variant == TargetSpec::Variant::empirical && cfg.delta <= 0.0)
        throw validation_error("run_reverse: empirical targets require delta > 0");

    const int d = score.target().dim;
    const int K = cfg.K;
    const double h = cfg.step();

    // Per-step constants shared by all paths.
    std::vector<ScoreModel::Frozen> frozen;
    std::vector<OuStepMoments> moments(K);
    std::vector<double> gdot_grid; // euler integrator only
    frozen.reserve(K);
    for (int k = 0; k < K; ++k) {
        double tk = k * h, tk1 = (k + 1) * h;
        frozen.push_back(score.at(cfg.T - tk));
        double u = cfg.scheduler.eval_g(cfg.T - tk) - cfg.scheduler.eval_g(cfg.T - tk1);
        moments[k] = ou_step_moments(u);
    }
    if (cfg.integrator == Integrator::euler) {
        gdot_grid.resize(static_cast<std::size_t>(K) * cfg.euler_substeps);
        double dt = h / cfg.euler_substeps;
        for (int k = 0; k < K; ++k)
            for (int j = 0; j < cfg.euler_substeps; ++j)
                gdot_grid[k * cfg.euler_substeps + j] =
                    cfg.scheduler.eval_gdot(cfg.T - (k * h + j * dt));
    }

    SampleSet out;
    out.n = n_paths;
    out.dim = d;
    out.data.assign(n_paths * d, 0.0);

    parallel_for(n_paths, [&](std::size_t i) {
        std::mt19937_64 rng = make_stream(cfg.seed, i);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x(d), sc(d);
        for (int k = 0; k < d; ++k) x[k] = std::sqrt(0.5) * normal(rng);
        for (int k = 0; k < K; ++k) {
            frozen[k].eval(x, sc);
            if (cfg.integrator == Integrator::exact_ou) {
                double decay = moments[k].decay;
                double sd = std::sqrt(moments[k].variance);
                for (int c = 0; c < d; ++c)
                    x[c] = x[c] * decay + sc[c] * (1.0 - decay) + sd * normal(rng);
            } else {
                double dt = h / cfg.euler_substeps;
                for (int j = 0; j < cfg.euler_substeps; ++j) {
                    double gd = gdot_grid[k * cfg.euler_substeps + j];
                    double diff = std::sqrt(gd * dt);
                    for (int c = 0; c < d; ++c)
                        x[c] += gd * (sc[c] - x[c]) * dt + diff * normal(rng);
                }
            }
        }
        for (int c = 0; c < d; ++c) {
            if (!std::isfinite(x[c]))
                throw numerical_error("run_reverse: non-finite state in path " +
                                      std::to_string(i));
            out.data[i * d + c] = x[c];
        }
    });
    return out;
}

SampleSet run_reverse_reference(const TargetSpec& target, const ReverseConfig& cfg,
                                std::size_t n_paths) {
    cfg.validate();
    if (target.variant == TargetSpec::Variant::empirical && cfg.delta <= 0.0)
        throw validation_error("run_reverse_reference: empirical targets require delta > 0");
    const int d = target.dim;
    const int K = cfg.K;
    const double dt = cfg.step();

    // Marginals + gdot cached on the substep grid; the score itself is
    // re-evaluated at the current state inside the loop.
    std::vector<Marginal> marg;
    std::vector<double> gdot_grid(K);
    marg.reserve(K);
    for (int k = 0; k < K; ++k) {
        double u = cfg.T - k * dt;
        marg.push_back(target.variant == TargetSpec::Variant::empirical
                           ? marginal_at(target, cfg.scheduler, u)
                           : marginal_at_g(target, cfg.scheduler.eval_g(u)));
        gdot_grid[k] = cfg.scheduler.eval_gdot(u);
    }

    SampleSet out;
    out.n = n_paths;
    out.dim = d;
    out.data.assign(n_paths * d, 0.0);

    parallel_for(n_paths, [&](std::size_t i) {
        std::mt19937_64 rng = make_stream(cfg.seed, i);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x(d);
        for (int k = 0; k < d; ++k) x[k] = std::sqrt(0.5) * normal(rng);
        for (int k = 0; k < K; ++k) {
            std::vector<double> sc = score_p(marg[k], x);
            double gd = gdot_grid[k];
            double diff = std::sqrt(gd * dt);
            for (int c = 0; c < d; ++c)
                x[c] += gd * (sc[c] - x[c]) * dt + diff * normal(rng);
        }
        for (int c = 0; c < d; ++c) {
            if (!std::isfinite(x[c]))
                throw numerical_error("run_reverse_reference: non-finite state in path " +
                                      std::to_string(i));
            out.data[i * d + c] = x[c];
        }
    });
    return out;
}

MeanSe score_matching_error_mc(const ScoreModel& model, const ReverseConfig& cfg,
                               std::size_t n_per_step, std::uint64_t seed) {
    cfg.validate();
    const double h = cfg.step();
    const int d = model.target().dim;
    // Independent estimate per step; the total is the u_k-weighted sum with
    // variances adding accordingly.
    double total = 0.0, var = 0.0;
    for (int k = 0; k < cfg.K; ++k) {
        double tk = k * h, tk1 = (k + 1) * h;
        double u = cfg.scheduler.eval_g(cfg.T - tk) - cfg.scheduler.eval_g(cfg.T - tk1);
        double backward = cfg.T - tk;
        Marginal m = model.target().variant == TargetSpec::Variant::empirical
                         ? marginal_at(model.target(), cfg.scheduler, backward)
                         : marginal_at_g(model.target(), cfg.scheduler.eval_g(backward));
        ScoreModel::Frozen approx = model.at(backward);
        std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(k));
        std::vector<double> draws = sample(m, rng, n_per_step);
        std::vector<double> gaps(n_per_step);
        for (std::size_t i = 0; i < n_per_step; ++i) {
            std::span<const double> x(draws.data() + i * d, d);
            std::vector<double> sp = score_p(m, x);
            std::vector<double> sa = approx.eval(x);
            double q = 0.0;
            for (int c = 0; c < d; ++c) {
                double g = sa[c] - sp[c];
                q += g * g;
            }
            gaps[i] = q;
        }
        MeanSe ms = mean_se(gaps);
        total += u * ms.mean;
        var += u * u * ms.se * ms.se;
    }
    MeanSe out;
    out.mean = total;
    out.se = std::sqrt(var);
    out.n = n_per_step * cfg.K;
    return out;
}

void write_sample_set(const std::string& csv_path, const SampleSet& samples,
                      const ReverseConfig& cfg, const ScoreModel& score) {
    std::vector<std::string> cols;
    for (int k = 0; k < samples.dim; ++k) cols.push_back("x" + std::to_string(k));
    CsvTable table(cols);
    for (std::size_t i = 0; i < samples.n; ++i) {
        for (int k = 0; k < samples.dim; ++k) table.cell(samples.data[i * samples.dim + k]);
        table.end_row();
    }
    table.write(csv_path);
    nlohmann::json sidecar;
    sidecar["config"] = cfg.to_json();
    sidecar["score_model"] = score.to_json();
    sidecar["n_paths"] = samples.n;
    write_text_atomic(csv_path + ".json", sidecar.dump(2) + "\n");
}

} // namespace lab
