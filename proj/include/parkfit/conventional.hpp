#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkfit/types.hpp"

namespace parkfit {

// Per-team home/road tallies for one event class. "Home" means the game was
// played at the team's own park (park id == team id); every other game —
// neutral sites and games a club hosts elsewhere — counts as road for both
// clubs. Events scored are by the team batting, allowed are against it.
struct TeamHomeRoad {
    std::uint64_t hs_home = 0, ha_home = 0, games_home = 0;
    std::uint64_t hs_road = 0, ha_road = 0, games_road = 0;
};

struct HomeRoadCounts {
    std::vector<TeamHomeRoad> teams;                 // indexed by TeamId
    std::vector<std::string> warnings;               // excluded-team notes
    bool defined(TeamId t) const {
        const auto& c = teams[static_cast<std::size_t>(t.index)];
        return c.games_home > 0 && c.games_road > 0;
    }
};

HomeRoadCounts aggregate_home_road(const Dataset& ds, EventClass target);

// Ratio of per-game home event rate to per-game road event rate. Throws
// DataError when the team has no home or no road games, or when the road
// event count is zero (PF undefined, as opposed to PF = 0 for zero home
// events).
double conventional_pf(const TeamHomeRoad& tallies);
double conventional_pf(const HomeRoadCounts& counts, TeamId team);

// Induced per-PA probability: clamp(pf * p_average, eps, 1 - eps).
double conventional_probability(double pf, double p_average);

// One season/event slice of PFs, indexed by team; nullopt where undefined.
struct ConventionalTable {
    int season = 0;
    EventClass event = EventClass::Other;
    std::vector<std::optional<double>> team_pf;
    std::vector<std::string> warnings;
};

ConventionalTable conventional_table(const Dataset& ds, int season,
                                     EventClass target);

}  // namespace parkfit
