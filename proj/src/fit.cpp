#include "parkfit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace parkfit {
namespace {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double predict_probability(double b_i, double d_j, double r_k) {
    if (!std::isfinite(b_i) || !std::isfinite(d_j) || !std::isfinite(r_k))
        throw Error("predict_probability requires finite inputs");
    double p = logistic(b_i - d_j - r_k);
    // Keep the contract p in (0,1) even where exp saturates.
    const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::clamp(p, std::numeric_limits<double>::min(), hi);
}

double loss(const ParameterSet& params, const Dataset& ds, EventClass target) {
    PaTriples pas = make_triples(ds, target);
    ParamView view{params.b, params.d, params.r};
    return accumulate_serial(view, pas).loss;
}

Gradients gradients(const ParameterSet& params, const Dataset& ds,
                    EventClass target) {
    PaTriples pas = make_triples(ds, target);
    ParamView view{params.b, params.d, params.r};
    Accumulation acc = accumulate_serial(view, pas);
    return {std::move(acc.grad_b), std::move(acc.grad_d), std::move(acc.grad_r)};
}

FitReport fit(const Dataset& ds, EventClass target, const FitConfig& cfg) {
    if (ds.empty()) throw DataError("fit requires at least one plate appearance");
    if (cfg.max_epochs < 0) throw Error("max_epochs must be nonnegative");
    if (cfg.convergence_tol <= 0) throw Error("convergence_tol must be positive");

    PaTriples pas = make_triples(ds, target);
    const std::size_t n_t = static_cast<std::size_t>(ds.n_teams());
    const std::size_t n_p = static_cast<std::size_t>(ds.n_parks());

    FitReport report;
    report.config = cfg;
    if (cfg.alpha <= 0.0)
        report.config.alpha = 4.0 / static_cast<double>(pas.size());
    report.params.event = target;
    auto seasons = ds.seasons();
    report.params.season = seasons.size() == 1 ? seasons.front() : -1;
    if (seasons.size() != 1)
        report.warnings.push_back(
            "dataset spans " + std::to_string(seasons.size()) +
            " seasons; fit pools them (season recorded as -1)");

    // Coverage warnings: the model is only identified when every team both
    // bats and fields, and park estimates thin out below ~500 PAs.
    {
        std::vector<std::uint64_t> as_bat(n_t, 0), as_def(n_t, 0), at_park(n_p, 0);
        for (std::size_t l = 0; l < pas.size(); ++l) {
            as_bat[static_cast<std::size_t>(pas.bat[l])] += 1;
            as_def[static_cast<std::size_t>(pas.def[l])] += 1;
            at_park[static_cast<std::size_t>(pas.park[l])] += 1;
        }
        for (std::size_t t = 0; t < n_t; ++t)
            if (as_bat[t] == 0 || as_def[t] == 0)
                report.warnings.push_back("team " +
                                          ds.teams.name(static_cast<int>(t)) +
                                          " never appears as " +
                                          (as_bat[t] == 0 ? "batter" : "defender"));
        for (std::size_t k = 0; k < n_p; ++k)
            if (at_park[k] < 500)
                report.low_confidence_parks.push_back(static_cast<int>(k));
    }

    ParameterSet params;
    params.event = target;
    params.season = report.params.season;
    params.b.assign(n_t, cfg.init_value);
    params.d.assign(n_t, cfg.init_value);
    params.r.assign(n_p, cfg.init_value);

    double alpha = report.config.alpha;
    Accumulation acc =
        accumulate(ParamView{params.b, params.d, params.r}, pas, cfg.exec);
    double current_loss = acc.loss;
    report.loss_trace.push_back(current_loss);

    ParameterSet candidate = params;
    int consecutive_increases = 0;
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n_t; ++i) {
            const double db = alpha * acc.grad_b[i];
            const double dd = alpha * acc.grad_d[i];
            candidate.b[i] = params.b[i] - db;
            candidate.d[i] = params.d[i] - dd;
            max_delta = std::max({max_delta, std::abs(db), std::abs(dd)});
        }
        for (std::size_t k = 0; k < n_p; ++k) {
            const double dr = alpha * acc.grad_r[k];
            candidate.r[k] = params.r[k] - dr;
            max_delta = std::max(max_delta, std::abs(dr));
        }

        // Stop before evaluating a negligible step: this close to the
        // optimum the true decrease per epoch can drop below the rounding
        // noise of the loss sum, which would turn the accept test into a
        // coin flip and misread the flips as divergence.
        if (max_delta < cfg.convergence_tol) {
            report.converged = true;
            break;
        }

        Accumulation next = accumulate(
            ParamView{candidate.b, candidate.d, candidate.r}, pas, cfg.exec);
        report.epochs_run = epoch;
        if (next.loss <= current_loss) {  // accept
            params.b.swap(candidate.b);
            params.d.swap(candidate.d);
            params.r.swap(candidate.r);
            acc = std::move(next);
            current_loss = acc.loss;
            report.loss_trace.push_back(current_loss);
            consecutive_increases = 0;
        } else {  // reject: revert, shrink the step (NaN loss lands here too)
            ++consecutive_increases;
            report.loss_trace.push_back(current_loss);
            if (consecutive_increases >= 5)
                throw DivergenceError(
                    "loss increased for 5 consecutive epochs (learning rate " +
                        std::to_string(alpha) + ")",
                    alpha);
            alpha /= 2.0;
        }
    }

    report.final_loss = current_loss;
    report.params = cfg.gauge_fix ? gauge_normalize(params) : params;
    return report;
}

ParameterSet gauge_normalize(const ParameterSet& params) {
    ParameterSet out = params;
    const double md = mean(params.d);
    const double mr = mean(params.r);
    for (auto& v : out.d) v -= md;
    for (auto& v : out.r) v -= mr;
    for (auto& v : out.b) v -= md + mr;
    return out;
}

double proposed_pf(const ParameterSet& params, ParkId k) {
    if (k.index < 0 || k.index >= static_cast<int>(params.r.size()))
        throw Error("proposed_pf park index out of range");
    const double eb = mean(params.b);
    const double ed = mean(params.d);
    const double er = mean(params.r);
    return logistic(eb - ed - params.r[static_cast<std::size_t>(k.index)]) /
           logistic(eb - ed - er);
}

std::vector<double> proposed_pf_all(const ParameterSet& params) {
    std::vector<double> out(params.r.size());
    for (std::size_t k = 0; k < params.r.size(); ++k)
        out[k] = proposed_pf(params, ParkId{static_cast<int>(k)});
    return out;
}

}  // namespace parkfit
