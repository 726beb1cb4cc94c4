#include "parkfit/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace parkfit {
namespace {

double clamp_prob(double p) {
    return std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
}

// Kahan-compensated sum in sequence order: deterministic and accurate enough
// that the constant-model entropy identity holds to ~1e-15 relative.
class CompensatedSum {
  public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct SeasonSlice {
    int season;
    std::vector<const PlateAppearance*> pas;
};

std::vector<SeasonSlice> slice_seasons(const Dataset& ds) {
    std::vector<SeasonSlice> slices;
    for (int season : ds.seasons()) slices.push_back({season, {}});
    for (const auto& pa : ds.plate_appearances)
        for (auto& s : slices)
            if (s.season == pa.season) {
                s.pas.push_back(&pa);
                break;
            }
    return slices;
}

}  // namespace

std::string_view model_name(ModelKind m) {
    switch (m) {
        case ModelKind::Baseline: return "baseline";
        case ModelKind::Conventional: return "conventional";
        case ModelKind::Pairwise: return "pairwise";
    }
    throw Error("unknown model kind");
}

double baseline_rate(const Dataset& ds, EventClass target) {
    if (target == EventClass::Other)
        throw Error("baseline_rate target must be a modeled event");
    if (ds.empty()) throw DataError("baseline_rate requires a non-empty dataset");
    std::uint64_t hits = 0;
    for (const auto& pa : ds.plate_appearances) hits += binary_outcome(pa, target);
    return static_cast<double>(hits) /
           static_cast<double>(ds.plate_appearances.size());
}

double log_loss(const std::vector<double>& probs,
                const std::vector<int>& outcomes) {
    if (probs.size() != outcomes.size())
        throw Error("log_loss length mismatch: " + std::to_string(probs.size()) +
                    " probabilities vs " + std::to_string(outcomes.size()) +
                    " outcomes");
    if (probs.empty()) throw Error("log_loss requires at least one observation");
    CompensatedSum sum;
    for (std::size_t l = 0; l < probs.size(); ++l) {
        const double p = probs[l];
        if (!(p > 0.0 && p < 1.0))
            throw Error("log_loss probability outside (0,1) at index " +
                        std::to_string(l));
        sum.add(outcomes[l] ? -std::log2(p) : -std::log2(1.0 - p));
    }
    return sum.value() / static_cast<double>(probs.size());
}

double constant_model_log_loss(double p, double q) {
    if (!(p > 0.0 && p < 1.0)) throw Error("constant model probability outside (0,1)");
    if (q < 0.0 || q > 1.0) throw Error("outcome rate outside [0,1]");
    double ll = 0.0;
    if (q > 0.0) ll += -q * std::log2(p);
    if (q < 1.0) ll += -(1.0 - q) * std::log2(1.0 - p);
    return ll;
}

std::vector<BaselineCell> baseline_table(
    const Dataset& ds, const std::vector<int>& seasons,
    const std::vector<EventClass>& events) {
    std::vector<BaselineCell> cells;
    for (int season : seasons) {
        Dataset slice = ds.filter_season(season);
        for (EventClass ev : events) {
            BaselineCell cell;
            cell.season = season;
            cell.event = ev;
            if (!slice.empty()) {
                cell.present = true;
                cell.rate = baseline_rate(slice, ev);
                const double p = clamp_prob(cell.rate);
                cell.log_loss = constant_model_log_loss(p, cell.rate);
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

EvalReport improvement_report(const Dataset& ds,
                              const std::vector<ConventionalTable>& pf_tables,
                              const std::vector<FitReport>& fits,
                              const std::vector<EventClass>& events) {
    if (ds.empty()) throw DataError("improvement_report requires a non-empty dataset");
    EvalReport report;
    const int n_teams = ds.n_teams();

    for (const auto& slice : slice_seasons(ds)) {
        const auto n_pa = static_cast<std::uint64_t>(slice.pas.size());
        for (EventClass ev : events) {
            std::vector<int> outcomes;
            outcomes.reserve(slice.pas.size());
            for (const auto* pa : slice.pas)
                outcomes.push_back(binary_outcome(*pa, ev));
            const std::uint64_t hits = static_cast<std::uint64_t>(
                std::count(outcomes.begin(), outcomes.end(), 1));
            const double rate = static_cast<double>(hits) /
                                static_cast<double>(slice.pas.size());
            const double p_avg = clamp_prob(rate);

            std::vector<double> probs(slice.pas.size(), p_avg);
            const double base_ll = log_loss(probs, outcomes);
            report.rows.push_back(
                {slice.season, ev, ModelKind::Baseline, base_ll, 0.0, n_pa});

            const ConventionalTable* table = nullptr;
            for (const auto& t : pf_tables)
                if (t.season == slice.season && t.event == ev) { table = &t; break; }
            if (table) {
                for (std::size_t l = 0; l < slice.pas.size(); ++l) {
                    const int park = slice.pas[l]->park.index;
                    double pf = 1.0;  // neutral site or undefined PF
                    if (park < n_teams &&
                        park < static_cast<int>(table->team_pf.size()) &&
                        table->team_pf[static_cast<std::size_t>(park)])
                        pf = *table->team_pf[static_cast<std::size_t>(park)];
                    probs[l] = conventional_probability(pf, p_avg);
                }
                const double ll = log_loss(probs, outcomes);
                report.rows.push_back({slice.season, ev, ModelKind::Conventional,
                                       ll, ll - base_ll, n_pa});
            } else {
                report.absent.push_back({slice.season, ev, ModelKind::Conventional,
                                         "no conventional PF table supplied"});
            }

            const FitReport* fit_report = nullptr;
            for (const auto& f : fits)
                if (f.params.season == slice.season && f.params.event == ev) {
                    fit_report = &f;
                    break;
                }
            if (fit_report) {
                const auto& p = fit_report->params;
                bool in_range = true;
                for (const auto* pa : slice.pas)
                    if (pa->batting_team.index >= static_cast<int>(p.b.size()) ||
                        pa->defense_team.index >= static_cast<int>(p.d.size()) ||
                        pa->park.index >= static_cast<int>(p.r.size())) {
                        in_range = false;
                        break;
                    }
                if (!in_range) {
                    report.absent.push_back(
                        {slice.season, ev, ModelKind::Pairwise,
                         "fit parameters do not cover this dataset's ids"});
                } else {
                    for (std::size_t l = 0; l < slice.pas.size(); ++l) {
                        const auto* pa = slice.pas[l];
                        const double z =
                            p.b[static_cast<std::size_t>(pa->batting_team.index)] -
                            p.d[static_cast<std::size_t>(pa->defense_team.index)] -
                            p.r[static_cast<std::size_t>(pa->park.index)];
                        probs[l] = clamp_prob(logistic(z));
                    }
                    const double ll = log_loss(probs, outcomes);
                    report.rows.push_back({slice.season, ev, ModelKind::Pairwise,
                                           ll, ll - base_ll, n_pa});
                }
            } else {
                report.absent.push_back({slice.season, ev, ModelKind::Pairwise,
                                         "no fit report supplied"});
            }
        }
    }
    return report;
}

std::vector<std::pair<int, double>> bases_walks_per_pa(const Dataset& ds) {
    if (ds.empty()) throw DataError("bases_walks_per_pa requires a non-empty dataset");
    std::vector<std::uint64_t> pa_count(static_cast<std::size_t>(ds.n_parks()), 0);
    std::vector<std::uint64_t> bases(static_cast<std::size_t>(ds.n_parks()), 0);
    for (const auto& pa : ds.plate_appearances) {
        const auto k = static_cast<std::size_t>(pa.park.index);
        pa_count[k] += 1;
        switch (pa.event) {
            case EventClass::Single: bases[k] += 1; break;
            case EventClass::Double: bases[k] += 2; break;
            case EventClass::Triple: bases[k] += 3; break;
            case EventClass::HomeRun: bases[k] += 4; break;
            case EventClass::Walk: bases[k] += 1; break;
            case EventClass::Other: break;
        }
    }
    std::vector<std::pair<int, double>> out;
    for (std::size_t k = 0; k < pa_count.size(); ++k)
        if (pa_count[k] > 0)
            out.emplace_back(static_cast<int>(k),
                             static_cast<double>(bases[k]) /
                                 static_cast<double>(pa_count[k]));
    return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("pearson length mismatch");
    if (x.size() < 2) throw Error("pearson requires at least 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error("pearson undefined: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    const double r = pearson(x, y);
    return r * r;
}

PfScatter pf_scatter_table(const std::map<std::string, double>& proposed,
                           const std::map<std::string, double>& conventional) {
    std::string missing;
    for (const auto& [park, _] : proposed)
        if (!conventional.count(park)) missing += " conventional:" + park;
    for (const auto& [park, _] : conventional)
        if (!proposed.count(park)) missing += " proposed:" + park;
    if (!missing.empty())
        throw DataError("pf_scatter_table park sets differ; missing from" + missing);

    PfScatter out;
    for (const auto& [park, pf] : proposed) {
        out.parks.push_back(park);
        out.proposed.push_back(pf);
        out.conventional.push_back(conventional.at(park));
    }
    out.pearson_r = pearson(out.proposed, out.conventional);
    return out;
}

}  // namespace parkfit
