#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parkfit/conventional.hpp"
#include "parkfit/fit.hpp"
#include "parkfit/types.hpp"

namespace parkfit {

enum class ModelKind { Baseline, Conventional, Pairwise };
std::string_view model_name(ModelKind m);

// Event occurrences / plate appearances over the whole dataset.
double baseline_rate(const Dataset& ds, EventClass target);

// Mean per-PA base-2 loss. Probabilities must already lie strictly in (0,1)
// (clamp upstream); summation is compensated and in sequence order.
double log_loss(const std::vector<double>& probs,
                const std::vector<int>& outcomes);

// Binary entropy: the log-loss of the constant model p on outcomes at rate q.
double constant_model_log_loss(double p, double q);

struct BaselineCell {
    int season = 0;
    EventClass event = EventClass::Other;
    bool present = false;
    double rate = 0.0;
    double log_loss = 0.0;  // binary entropy of rate
};

// One cell per (season, event): the constant-rate model's loss. Seasons with
// no plate appearances are marked absent.
std::vector<BaselineCell> baseline_table(const Dataset& ds,
                                         const std::vector<int>& seasons,
                                         const std::vector<EventClass>& events);

struct EvalRow {
    int season = 0;
    EventClass event = EventClass::Other;
    ModelKind model = ModelKind::Baseline;
    double log_loss = 0.0;
    double delta_vs_baseline = 0.0;
    std::uint64_t n_pa = 0;
};

struct AbsentCell {
    int season = 0;
    EventClass event = EventClass::Other;
    ModelKind model = ModelKind::Baseline;
    std::string reason;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    std::vector<AbsentCell> absent;
};

// Scores baseline / conventional / pairwise per (season, event) with the same
// empirical log-loss path, so identical probability vectors give identical
// losses and exact-zero deltas. Conventional probabilities use the PF of the
// PA's park owner; neutral parks and undefined PFs fall back to PF = 1.
// Models without an input table/fit are reported absent with a reason.
EvalReport improvement_report(const Dataset& ds,
                              const std::vector<ConventionalTable>& pf_tables,
                              const std::vector<FitReport>& fits,
                              const std::vector<EventClass>& events);

// Total bases plus walks per PA for every park with at least one PA
// (1B=1, 2B=2, 3B=3, HR=4, BB=1), as (park id, value) pairs in park order.
std::vector<std::pair<int, double>> bases_walks_per_pa(const Dataset& ds);

// Squared Pearson correlation of the least-squares fit of y on x.
double r_squared(const std::vector<double>& x, const std::vector<double>& y);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct PfScatter {
    std::vector<std::string> parks;   // sorted by name
    std::vector<double> proposed;
    std::vector<double> conventional;
    double pearson_r = 0.0;
};

// Pairs proposed and conventional PFs over an identical park set; a mismatch
// throws DataError listing the parks missing from either side.
PfScatter pf_scatter_table(const std::map<std::string, double>& proposed,
                           const std::map<std::string, double>& conventional);

}  // namespace parkfit
