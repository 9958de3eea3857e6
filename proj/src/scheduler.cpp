#include "lab/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <nlohmann/json.hpp>

#include "lab/errors.hpp"

namespace lab {

void warn(const std::string& message) {
    std::cerr << "[lab] warning: " << message << '\n';
}

std::string to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::linear: return "linear";
        case SchedulerKind::optimal: return "optimal";
        case SchedulerKind::cosine: return "cosine";
        case SchedulerKind::piecewise: return "piecewise";
    }
    return "?";
}

SchedulerKind scheduler_kind_from_string(const std::string& name) {
    if (name == "linear") return SchedulerKind::linear;
    if (name == "optimal") return SchedulerKind::optimal;
    if (name == "cosine") return SchedulerKind::cosine;
    if (name == "piecewise") return SchedulerKind::piecewise;
    throw validation_error("unknown scheduler kind: " + name);
}

namespace {

void check_horizon(double T, double Tprime) {
    if (!(T > 0.0)) throw validation_error("scheduler: horizon T must be positive");
    if (!(Tprime >= 0.0)) throw validation_error("scheduler: Tprime must be nonnegative");
}

} // namespace

Scheduler Scheduler::linear(double T, double Tprime) {
    check_horizon(T, Tprime);
    Scheduler s;
    s.kind_ = SchedulerKind::linear;
    s.T_ = T;
    s.Tprime_ = Tprime;
    return s;
}

Scheduler Scheduler::optimal(double T, double Tprime) {
    check_horizon(T, Tprime);
    if (!(Tprime > 0.0)) throw validation_error("optimal scheduler: Tprime must be positive");
    Scheduler s;
    s.kind_ = SchedulerKind::optimal;
    s.T_ = T;
    s.Tprime_ = Tprime;
    s.contraction_ = std::expm1(-Tprime); // e^{-T'} - 1; scaled by t/T at eval
    return s;
}

Scheduler Scheduler::cosine(double T, double Tprime) {
    check_horizon(T, Tprime);
    if (!(Tprime > 0.0)) throw validation_error("cosine scheduler: Tprime must be positive");
    Scheduler s;
    s.kind_ = SchedulerKind::cosine;
    s.T_ = T;
    s.Tprime_ = Tprime;
    double a;
    if (Tprime > 36.0) {
        a = 1.0 - 1e-12;
        warn("cosine scheduler: Tprime > 36, clamping a; g(T) saturates near 27.2 < Tprime");
    } else {
        a = (2.0 / M_PI) * std::acos(std::exp(-Tprime));
    }
    s.cos_rate_ = M_PI * a / (2.0 * T);
    return s;
}

Scheduler Scheduler::piecewise(double T, std::vector<std::pair<double, double>> knots) {
    check_horizon(T, 0.0);
    if (knots.size() < 2) throw validation_error("piecewise scheduler: need >= 2 knots");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw validation_error("piecewise scheduler: knot times must be strictly increasing");
    if (knots.front().first != 0.0 || knots.front().second != 0.0)
        throw validation_error("piecewise scheduler: first knot must be (0, 0)");
    if (knots.back().first != T)
        throw validation_error("piecewise scheduler: last knot time must equal T");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].second < knots[i - 1].second)
            throw validation_error("piecewise scheduler: g values must be nondecreasing");
    // Convexity of slopes is advisory: optimizer iterates may traverse
    // non-convex paths.
    for (std::size_t i = 2; i < knots.size(); ++i) {
        double s0 = (knots[i - 1].second - knots[i - 2].second) /
                    (knots[i - 1].first - knots[i - 2].first);
        double s1 = (knots[i].second - knots[i - 1].second) /
                    (knots[i].first - knots[i - 1].first);
        if (s1 < s0 - 1e-9 * (1.0 + std::abs(s0))) {
            warn("piecewise scheduler: slopes are not nondecreasing (non-convex path)");
            break;
        }
    }
    Scheduler s;
    s.kind_ = SchedulerKind::piecewise;
    s.T_ = T;
    s.Tprime_ = knots.back().second;
    s.knots_ = std::move(knots);
    return s;
}

double Scheduler::eval_g(double t) const {
    if (!(t >= 0.0 && t <= T_))
        throw std::domain_error("eval_g: t outside [0, T]");
    switch (kind_) {
        case SchedulerKind::linear:
            return Tprime_ * (t / T_);
        case SchedulerKind::optimal:
            // -ln(1 - (t/T)(1 - e^{-T'})); t/T keeps g(T) = T' to a couple ulp
            return -std::log1p(contraction_ * (t / T_));
        case SchedulerKind::cosine:
            // boundary pinned by the definition cos(pi a/2) = e^{-T'}; the
            // cos/acos round trip loses e^{T'}-amplified digits there
            if (t == T_) return Tprime_;
            return -std::log(std::cos(cos_rate_ * t));
        case SchedulerKind::piecewise: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                       [](double v, const auto& k) { return v < k.first; });
            if (it == knots_.begin()) return knots_.front().second;
            if (it == knots_.end()) return knots_.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            double w = (t - lo.first) / (hi.first - lo.first);
            return lo.second + w * (hi.second - lo.second);
        }
    }
    return 0.0;
}

double Scheduler::eval_gdot(double t) const {
    if (!(t >= 0.0 && t <= T_))
        throw std::domain_error("eval_gdot: t outside [0, T]");
    switch (kind_) {
        case SchedulerKind::linear:
            return Tprime_ / T_;
        case SchedulerKind::optimal:
            // c / (1 - c t), c = (1 - e^{-T'})/T; denominator is exact to
            // 2 ulp (Sterbenz when contraction_ <= -1/2)
            return (-contraction_ / T_) / (1.0 + contraction_ * (t / T_));
        case SchedulerKind::cosine:
            return cos_rate_ * std::tan(cos_rate_ * t);
        case SchedulerKind::piecewise: {
            // right-hand slope at knots
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                       [](double v, const auto& k) { return v < k.first; });
            if (it == knots_.end()) it = knots_.end() - 1; // t == T: last segment
            if (it == knots_.begin()) ++it;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            return (hi.second - lo.second) / (hi.first - lo.first);
        }
    }
    return 0.0;
}

nlohmann::json Scheduler::to_json() const {
    nlohmann::json j;
    j["kind"] = to_string(kind_);
    j["T"] = T_;
    j["Tprime"] = Tprime_;
    if (kind_ == SchedulerKind::piecewise) {
        nlohmann::json ks = nlohmann::json::array();
        for (const auto& [t, g] : knots_) ks.push_back({t, g});
        j["knots"] = std::move(ks);
    }
    return j;
}

Scheduler Scheduler::from_json(const nlohmann::json& j) {
    SchedulerKind kind = scheduler_kind_from_string(j.at("kind").get<std::string>());
    double T = j.at("T").get<double>();
    switch (kind) {
        case SchedulerKind::linear: return linear(T, j.at("Tprime").get<double>());
        case SchedulerKind::optimal: return optimal(T, j.at("Tprime").get<double>());
        case SchedulerKind::cosine: return cosine(T, j.at("Tprime").get<double>());
        case SchedulerKind::piecewise: {
            std::vector<std::pair<double, double>> knots;
            for (const auto& k : j.at("knots"))
                knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
            return piecewise(T, std::move(knots));
        }
    }
    throw validation_error("scheduler from_json: bad kind");
}

double euler_lagrange_residual_max(const Scheduler& s, int n_grid) {
    if (n_grid < 2) throw validation_error("euler_lagrange_residual_max: n_grid >= 2");
    double T = s.horizon();
    double worst = 0.0;
    for (int i = 0; i < n_grid; ++i) {
        double t = T * (i + 0.5) / n_grid; // keep FD stencil inside [0, T]
        double gd = s.eval_gdot(t);
        double h = 1e-6 / (1.0 + std::abs(gd));
        h = std::min(h, 0.5 * std::min(t, T - t));
        double gdd = (s.eval_gdot(t + h) - s.eval_gdot(t - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(gdd - gd * gd));
    }
    return worst;
}

} // namespace lab
