#include "parkfit/conventional.hpp"

#include <algorithm>
#include <unordered_set>

namespace parkfit {

HomeRoadCounts aggregate_home_road(const Dataset& ds, EventClass target) {
    if (target == EventClass::Other)
        throw Error("aggregate_home_road target must be a modeled event");
    const std::size_t n = static_cast<std::size_t>(ds.n_teams());
    HomeRoadCounts out;
    out.teams.resize(n);

    // Distinct games per (team, bucket); keyed by season+game_id.
    std::vector<std::unordered_set<std::string>> home_games(n), road_games(n);

    auto bucket_is_home = [](const PlateAppearance& pa, int team) {
        return pa.park.index == team;
    };

    for (const auto& pa : ds.plate_appearances) {
        const int bat = pa.batting_team.index;
        const int def = pa.defense_team.index;
        const std::string key = std::to_string(pa.season) + ":" + pa.game_id;
        for (int team : {bat, def}) {
            auto& games = bucket_is_home(pa, team)
                              ? home_games[static_cast<std::size_t>(team)]
                              : road_games[static_cast<std::size_t>(team)];
            games.insert(key);
        }
        if (binary_outcome(pa, target)) {
            auto& bat_counts = out.teams[static_cast<std::size_t>(bat)];
            auto& def_counts = out.teams[static_cast<std::size_t>(def)];
            if (bucket_is_home(pa, bat)) bat_counts.hs_home += 1;
            else bat_counts.hs_road += 1;
            if (bucket_is_home(pa, def)) def_counts.ha_home += 1;
            else def_counts.ha_road += 1;
        }
    }

    for (std::size_t t = 0; t < n; ++t) {
        out.teams[t].games_home = home_games[t].size();
        out.teams[t].games_road = road_games[t].size();
        if (out.teams[t].games_home == 0 || out.teams[t].games_road == 0)
            out.warnings.push_back("team " + ds.teams.name(static_cast<int>(t)) +
                                   " has no " +
                                   (out.teams[t].games_home == 0 ? "home" : "road") +
                                   " games; conventional PF undefined");
    }
    return out;
}

double conventional_pf(const TeamHomeRoad& c) {
    if (c.games_home == 0 || c.games_road == 0)
        throw DataError("conventional PF undefined: team lacks home or road games");
    if (c.hs_road + c.ha_road == 0)
        throw DataError("conventional PF undefined: zero road events");
    const double home_rate =
        static_cast<double>(c.hs_home + c.ha_home) / static_cast<double>(c.games_home);
    const double road_rate =
        static_cast<double>(c.hs_road + c.ha_road) / static_cast<double>(c.games_road);
    return home_rate / road_rate;
}

double conventional_pf(const HomeRoadCounts& counts, TeamId team) {
    return conventional_pf(counts.teams.at(static_cast<std::size_t>(team.index)));
}

double conventional_probability(double pf, double p_average) {
    if (pf < 0) throw DataError("conventional_probability requires pf >= 0");
    if (!(p_average > 0.0 && p_average < 1.0))
        throw DataError("conventional_probability requires p_average in (0,1)");
    return std::clamp(pf * p_average, kProbEpsilon, 1.0 - kProbEpsilon);
}

ConventionalTable conventional_table(const Dataset& ds, int season,
                                     EventClass target) {
    Dataset slice = ds.filter_season(season);
    ConventionalTable table;
    table.season = season;
    table.event = target;
    table.team_pf.resize(static_cast<std::size_t>(ds.n_teams()));
    if (slice.empty()) {
        table.warnings.push_back("season " + std::to_string(season) +
                                 " has no plate appearances");
        return table;
    }
    HomeRoadCounts counts = aggregate_home_road(slice, target);
    table.warnings = counts.warnings;
    for (int t = 0; t < ds.n_teams(); ++t) {
        const auto& c = counts.teams[static_cast<std::size_t>(t)];
        if (c.games_home == 0 || c.games_road == 0) continue;  // already warned
        if (c.hs_road + c.ha_road == 0) {
            table.warnings.push_back("team " + ds.teams.name(t) +
                                     " has zero road events; conventional PF "
                                     "undefined");
            continue;
        }
        table.team_pf[static_cast<std::size_t>(t)] =
            conventional_pf(counts, TeamId{t});
    }
    return table;
}

}  // namespace parkfit
