#pragma once

#include <string>
#include <vector>

#include "parkfit/kernels.hpp"
#include "parkfit/types.hpp"

namespace parkfit {

// Fitted strengths for one (season, event): per-team batting b and defense d,
// per-park r, all on the logistic's log-odds scale.
struct ParameterSet {
    std::vector<double> b;
    std::vector<double> d;
    std::vector<double> r;
    EventClass event = EventClass::Other;
    int season = 0;
};

struct FitConfig {
    double alpha = 0.0;          // learning rate; <= 0 selects 4 / n_PA
    int max_epochs = 10000;
    double convergence_tol = 1e-7;  // max-abs parameter change per epoch
    double init_value = 0.0;
    bool gauge_fix = true;
    ExecPath exec = ExecPath::Blocked;
};

struct FitReport {
    ParameterSet params;
    FitConfig config;            // effective config (alpha resolved)
    int epochs_run = 0;
    double final_loss = 0.0;
    std::vector<double> loss_trace;  // loss_trace[0] is the initial loss
    bool converged = false;
    std::vector<std::string> warnings;
    std::vector<int> low_confidence_parks;  // parks with < 500 PAs
};

// sigma(b_i - d_j - r_k), kept strictly inside (0,1) even when saturated.
double predict_probability(double b_i, double d_j, double r_k);

double loss(const ParameterSet& params, const Dataset& ds, EventClass target);

struct Gradients {
    std::vector<double> b;
    std::vector<double> d;
    std::vector<double> r;
};

Gradients gradients(const ParameterSet& params, const Dataset& ds,
                    EventClass target);

// Full-batch steepest descent from a constant start. Any epoch whose step
// increases the loss is rejected and the learning rate halved; five
// consecutive rejections raise DivergenceError naming the rate.
FitReport fit(const Dataset& ds, EventClass target, const FitConfig& cfg);

// Canonical gauge: mean(d) = 0 and mean(r) = 0, both shifts folded into b.
// Every predicted probability is unchanged.
ParameterSet gauge_normalize(const ParameterSet& params);

// Model park factor: probability of the event for an average batter vs
// average defense at park k, relative to the same at the average park.
double proposed_pf(const ParameterSet& params, ParkId k);
std::vector<double> proposed_pf_all(const ParameterSet& params);

}  // namespace parkfit
