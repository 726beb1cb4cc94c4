#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parkfit/fit.hpp"
#include "parkfit/types.hpp"

namespace parkfit {

// Counter-based generator used for all synthetic sampling; the algorithm name
// is recorded in the ledger so datasets are reproducible from (name, seed).
inline constexpr std::string_view kRngAlgorithm = "splitmix64";

struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

// SplitMix64 finalizer as a standalone mixer, used to derive per-game streams.
std::uint64_t mix64(std::uint64_t v);

struct ScheduledGame {
    int home_team = 0;
    int away_team = 0;
    int park = -1;          // -1: defaults to the home team's park
    int n_pa_per_side = 0;
};

struct SyntheticSpec {
    int n_teams = 0;
    int n_parks = 0;
    // Planted parameters per modeled event; events absent from the map are
    // never generated (those PAs fall through to Other).
    std::map<EventClass, ParameterSet> params;
    std::vector<ScheduledGame> schedule;
    std::uint64_t rng_seed = 0;
    int season = 2000;  // stamped on every generated row
};

struct TripleTally {
    int bat = 0, def = 0, park = 0;
    std::array<std::uint64_t, kNumEventClasses> counts{};
    std::uint64_t total = 0;
};

struct SynthLedger {
    std::string algorithm{kRngAlgorithm};
    std::uint64_t seed = 0;
    DatasetSummary totals;
    std::vector<TripleTally> triples;  // ordered by (bat, def, park)
};

struct SynthResult {
    Dataset dataset;
    SynthLedger ledger;
};

// Samples one event per scheduled PA by cutting [0,1) into consecutive
// intervals for the modeled events in the fixed order HR, 3B, 2B, 1B, BB and
// drawing a single uniform; the remainder maps to Other. Per game the visitor
// bats first; games use independent derived streams, so generation order is
// deterministic by schedule order. Probabilities summing above 1 for any
// (batter, defense, park) triple raise an error naming the triple. Teams are
// named T00.., parks P00..; ids equal spec indices.
SynthResult generate(const SyntheticSpec& spec);

struct RecoveryScore {
    double pearson_r = 0.0;
    double max_abs_pf_error = 0.0;
};

// Compares planted vs fitted park factors (gauge-free quantities); both
// parameter sets must cover the same number of parks, indexed identically.
RecoveryScore recovery_score(const ParameterSet& planted,
                             const ParameterSet& fitted);

// Round-robin-style 30-team schedule with the big-league shape: 2430 games,
// each team hosting 80-82. Used by tests and reproducible experiments.
std::vector<ScheduledGame> mlb_like_schedule(int n_teams, int n_pa_per_side);

}  // namespace parkfit
