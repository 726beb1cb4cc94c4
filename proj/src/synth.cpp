#include "parkfit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "parkfit/evaluation.hpp"

namespace parkfit {
namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Sampling order for mutually exclusive events within one PA.
constexpr std::array<EventClass, 5> kThinningOrder = {
    EventClass::HomeRun, EventClass::Triple, EventClass::Double,
    EventClass::Single, EventClass::Walk};

std::string padded_name(char prefix, int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%02d", prefix, index);
    return buf;
}

std::string game_name(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "SYN%06zu", index);
    return buf;
}

void validate_spec(const SyntheticSpec& spec) {
    if (spec.n_teams < 2) throw DataError("synthetic spec needs at least 2 teams");
    if (spec.n_parks < spec.n_teams)
        throw DataError("synthetic spec needs n_parks >= n_teams");
    for (const auto& [event, params] : spec.params) {
        if (event == EventClass::Other)
            throw DataError("synthetic spec cannot plant parameters for Other");
        if (static_cast<int>(params.b.size()) != spec.n_teams ||
            static_cast<int>(params.d.size()) != spec.n_teams)
            throw DataError("planted b/d size mismatch for event " +
                            std::string(event_code(event)));
        if (static_cast<int>(params.r.size()) != spec.n_parks)
            throw DataError("planted r size mismatch for event " +
                            std::string(event_code(event)));
    }
    for (const auto& g : spec.schedule) {
        if (g.home_team < 0 || g.home_team >= spec.n_teams ||
            g.away_team < 0 || g.away_team >= spec.n_teams)
            throw DataError("scheduled game references a team out of range");
        if (g.home_team == g.away_team)
            throw DataError("scheduled game has identical home and away teams");
        const int park = g.park < 0 ? g.home_team : g.park;
        if (park >= spec.n_parks)
            throw DataError("scheduled game references a park out of range");
        if (park < spec.n_teams && park != g.home_team)
            throw DataError(
                "scheduled game at another team's home park; use a neutral "
                "park id >= n_teams");
        if (g.n_pa_per_side < 0)
            throw DataError("scheduled game has negative n_pa_per_side");
    }
}

}  // namespace

std::uint64_t mix64(std::uint64_t v) {
    v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ULL;
    v = (v ^ (v >> 27)) * 0x94D049BB133111EBULL;
    return v ^ (v >> 31);
}

SynthResult generate(const SyntheticSpec& spec) {
    validate_spec(spec);

    SynthResult result;
    result.ledger.seed = spec.rng_seed;
    Dataset& ds = result.dataset;
    for (int t = 0; t < spec.n_teams; ++t) ds.teams.add(padded_name('T', t));
    for (int k = 0; k < spec.n_parks; ++k) ds.parks.add(padded_name('P', k));

    // Probabilities for one (batter, defense, park) triple in thinning order.
    auto triple_probs = [&](int i, int j, int k) {
        std::array<double, 5> probs{};
        double total = 0.0;
        for (std::size_t e = 0; e < kThinningOrder.size(); ++e) {
            auto it = spec.params.find(kThinningOrder[e]);
            if (it == spec.params.end()) continue;
            const auto& p = it->second;
            probs[e] = logistic(p.b[static_cast<std::size_t>(i)] -
                                p.d[static_cast<std::size_t>(j)] -
                                p.r[static_cast<std::size_t>(k)]);
            total += probs[e];
        }
        if (total > 1.0)
            throw DataError("planted event probabilities sum to " +
                            std::to_string(total) + " > 1 for triple (bat=" +
                            std::to_string(i) + ", def=" + std::to_string(j) +
                            ", park=" + std::to_string(k) + ")");
        return probs;
    };

    std::map<std::tuple<int, int, int>, TripleTally> tallies;
    auto tally_for = [&](int i, int j, int k) -> TripleTally& {
        auto [it, inserted] =
            tallies.emplace(std::make_tuple(i, j, k), TripleTally{});
        if (inserted) {
            it->second.bat = i;
            it->second.def = j;
            it->second.park = k;
        }
        return it->second;
    };

    std::size_t total_pas = 0;
    for (const auto& g : spec.schedule)
        total_pas += 2 * static_cast<std::size_t>(g.n_pa_per_side);
    ds.plate_appearances.reserve(total_pas);

    for (std::size_t gi = 0; gi < spec.schedule.size(); ++gi) {
        const auto& g = spec.schedule[gi];
        const int park = g.park < 0 ? g.home_team : g.park;
        const std::string game_id = game_name(gi);

        // Independent derived stream per game keeps output deterministic by
        // schedule order even if games are generated in parallel.
        SplitMix64 rng{mix64(spec.rng_seed +
                             0x9E3779B97F4A7C15ULL *
                                 (static_cast<std::uint64_t>(gi) + 1))};

        const std::array<std::array<double, 5>, 2> side_probs = {
            triple_probs(g.away_team, g.home_team, park),
            triple_probs(g.home_team, g.away_team, park)};

        for (int side = 0; side < 2; ++side) {  // visitor bats first
            const int bat = side == 0 ? g.away_team : g.home_team;
            const int def = side == 0 ? g.home_team : g.away_team;
            const auto& probs = side_probs[static_cast<std::size_t>(side)];
            TripleTally& tally = tally_for(bat, def, park);
            for (int n = 0; n < g.n_pa_per_side; ++n) {
                const double u = rng.next_double();
                EventClass event = EventClass::Other;
                double cumulative = 0.0;
                for (std::size_t e = 0; e < kThinningOrder.size(); ++e) {
                    cumulative += probs[e];
                    if (u < cumulative) {
                        event = kThinningOrder[e];
                        break;
                    }
                }
                PlateAppearance pa;
                pa.game_id = game_id;
                pa.season = spec.season;
                pa.batting_team = TeamId{bat};
                pa.defense_team = TeamId{def};
                pa.home_team = TeamId{g.home_team};
                pa.park = ParkId{park};
                pa.event = event;
                ds.plate_appearances.push_back(std::move(pa));

                tally.counts[static_cast<std::size_t>(event)] += 1;
                tally.total += 1;
                result.ledger.totals.counts[static_cast<std::size_t>(event)] += 1;
                result.ledger.totals.total += 1;
            }
        }
    }

    result.ledger.triples.reserve(tallies.size());
    for (const auto& [key, tally] : tallies)
        result.ledger.triples.push_back(tally);
    return result;
}

RecoveryScore recovery_score(const ParameterSet& planted,
                             const ParameterSet& fitted) {
    if (planted.r.size() != fitted.r.size())
        throw Error("recovery_score park-count mismatch: " +
                    std::to_string(planted.r.size()) + " vs " +
                    std::to_string(fitted.r.size()));
    const std::vector<double> pf_planted = proposed_pf_all(planted);
    const std::vector<double> pf_fitted = proposed_pf_all(fitted);

    RecoveryScore score;
    // Identical vectors (e.g. fitted == planted up to gauge) would make the
    // pearson denominator zero only if PFs are constant; treat that exact
    // case as perfect correlation.
    double max_err = 0.0;
    for (std::size_t k = 0; k < pf_planted.size(); ++k)
        max_err = std::max(max_err, std::abs(pf_fitted[k] - pf_planted[k]));
    score.max_abs_pf_error = max_err;
    bool planted_constant = true;
    for (double v : pf_planted)
        if (v != pf_planted.front()) { planted_constant = false; break; }
    if (planted_constant) {
        score.pearson_r = max_err == 0.0 ? 1.0 : 0.0;
        return score;
    }
    score.pearson_r = pearson(pf_planted, pf_fitted);
    return score;
}

std::vector<ScheduledGame> mlb_like_schedule(int n_teams, int n_pa_per_side) {
    if (n_teams < 4 || n_teams % 2 != 0)
        throw Error("mlb_like_schedule requires an even team count >= 4");
    const int half = n_teams / 2;
    const int six_game_cutoff = std::max(1, (8 * n_teams) / 30);

    std::vector<ScheduledGame> schedule;
    for (int i = 0; i < n_teams; ++i) {
        for (int j = i + 1; j < n_teams; ++j) {
            const int diff = j - i;
            const int dist = std::min(diff, n_teams - diff);
            int host_i, host_j;
            if (dist <= six_game_cutoff || dist == half) {
                host_i = 3;
                host_j = 3;
            } else {
                const bool lower_hosts_three = (i + j) % 2 == 0;
                host_i = lower_hosts_three ? 3 : 2;
                host_j = 5 - host_i;
            }
            for (int n = 0; n < host_i; ++n)
                schedule.push_back({i, j, -1, n_pa_per_side});
            for (int n = 0; n < host_j; ++n)
                schedule.push_back({j, i, -1, n_pa_per_side});
        }
    }
    return schedule;
}

}  // namespace parkfit
