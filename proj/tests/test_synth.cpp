#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>
#include <utility>

#include "parkfit/ingest.hpp"
#include "parkfit/synth.hpp"
#include "test_util.hpp"

using namespace parkfit;
using testutil::planted_params;
using testutil::round_robin;

namespace {

ParameterSet constant_params(int n_teams, int n_parks, double b, double d,
                             double r, EventClass event) {
    ParameterSet p;
    p.event = event;
    p.b.assign(static_cast<std::size_t>(n_teams), b);
    p.d.assign(static_cast<std::size_t>(n_teams), d);
    p.r.assign(static_cast<std::size_t>(n_parks), r);
    return p;
}

SyntheticSpec two_team_spec(std::uint64_t seed, int n_pa_per_side) {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 2;
    spec.rng_seed = seed;
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 2, 0.0, 0.0, 0.0, EventClass::HomeRun));
    spec.schedule = {{0, 1, -1, n_pa_per_side}, {1, 0, -1, n_pa_per_side}};
    return spec;
}

}  // namespace

TEST_CASE("generate is deterministic in (algorithm, seed)") {
    SyntheticSpec spec = two_team_spec(31337, 200);
    SynthResult a = generate(spec);
    SynthResult b = generate(spec);
    CHECK(rows_from_dataset(a.dataset) == rows_from_dataset(b.dataset));
    CHECK(a.ledger.totals.counts == b.ledger.totals.counts);
    CHECK(a.ledger.algorithm == "splitmix64");
    CHECK(a.ledger.seed == 31337);

    spec.rng_seed = 31338;
    SynthResult c = generate(spec);
    CHECK(rows_from_dataset(a.dataset) != rows_from_dataset(c.dataset));
}

TEST_CASE("generated shape: names, ids, game ids, season stamp") {
    SyntheticSpec spec = two_team_spec(7, 3);
    spec.season = 1999;
    SynthResult result = generate(spec);
    const Dataset& ds = result.dataset;
    CHECK(ds.teams.name(0) == "T00");
    CHECK(ds.teams.name(1) == "T01");
    CHECK(ds.parks.name(0) == "P00");
    CHECK(ds.parks.name(1) == "P01");
    REQUIRE(ds.plate_appearances.size() == 12);
    CHECK(ds.plate_appearances[0].game_id == "SYN000000");
    CHECK(ds.plate_appearances[6].game_id == "SYN000001");
    for (const auto& pa : ds.plate_appearances) CHECK(pa.season == 1999);
    // Visitor bats first within each game.
    CHECK(ds.plate_appearances[0].batting_team.index == 1);
    CHECK(ds.plate_appearances[3].batting_team.index == 0);
    // Game 0 is hosted by team 0 at park 0.
    CHECK(ds.plate_appearances[0].park.index == 0);
    CHECK(ds.plate_appearances[6].park.index == 1);
}

TEST_CASE("ledger tallies equal the dataset summary") {
    SyntheticSpec spec = two_team_spec(99, 500);
    spec.params.emplace(
        EventClass::Walk,
        constant_params(2, 2, -1.0, 0.5, 0.0, EventClass::Walk));
    SynthResult result = generate(spec);
    DatasetSummary summary = dataset_summary(result.dataset);
    CHECK(result.ledger.totals.counts == summary.counts);
    CHECK(result.ledger.totals.total == summary.total);
    std::uint64_t triple_total = 0;
    for (const auto& t : result.ledger.triples) triple_total += t.total;
    CHECK(triple_total == summary.total);
    // Triples are listed in (bat, def, park) order.
    for (std::size_t i = 1; i < result.ledger.triples.size(); ++i) {
        const auto& a = result.ledger.triples[i - 1];
        const auto& b = result.ledger.triples[i];
        CHECK(std::make_tuple(a.bat, a.def, a.park) <
              std::make_tuple(b.bat, b.def, b.park));
    }
}

TEST_CASE("zero planted parameters give a coin-flip event rate") {
    const int n_side = 2000;
    SynthResult result = generate(two_team_spec(2024, n_side));
    DatasetSummary summary = dataset_summary(result.dataset);
    const double n = static_cast<double>(summary.total);
    const double rate =
        static_cast<double>(
            summary.counts[static_cast<std::size_t>(EventClass::HomeRun)]) /
        n;
    // 3 sigma for a fair coin over 8000 draws.
    CHECK(std::abs(rate - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("a strongly suppressing park almost never yields the event") {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 2;
    spec.rng_seed = 5150;
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 2, 0.0, 0.0, 10.0, EventClass::HomeRun));
    spec.schedule = {{0, 1, -1, 1000}};
    SynthResult result = generate(spec);
    DatasetSummary summary = dataset_summary(result.dataset);
    CHECK(summary.counts[static_cast<std::size_t>(EventClass::HomeRun)] <= 5);
}

TEST_CASE("per-triple tallies track the planted probabilities") {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 2;
    spec.rng_seed = 808;
    // Marginal rates around 0.10 / 0.20 / 0.08: comfortably under 1 combined.
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 2, -2.2, 0.0, 0.0, EventClass::HomeRun));
    spec.params.emplace(
        EventClass::Single,
        constant_params(2, 2, -1.4, 0.0, 0.0, EventClass::Single));
    spec.params.emplace(
        EventClass::Walk,
        constant_params(2, 2, -2.44, 0.0, 0.0, EventClass::Walk));
    const int n_side = 20000;
    spec.schedule = {{0, 1, -1, n_side}};
    SynthResult result = generate(spec);

    REQUIRE(result.ledger.triples.size() == 2);
    for (const auto& tally : result.ledger.triples) {
        REQUIRE(tally.total == static_cast<std::uint64_t>(n_side));
        for (auto [event, z] :
             {std::pair{EventClass::HomeRun, -2.2},
              std::pair{EventClass::Single, -1.4},
              std::pair{EventClass::Walk, -2.44}}) {
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double mean = p * n_side;
            const double sigma = std::sqrt(p * (1.0 - p) * n_side);
            const double count = static_cast<double>(
                tally.counts[static_cast<std::size_t>(event)]);
            CHECK(std::abs(count - mean) < 4.0 * sigma);
        }
    }
}

TEST_CASE("planted probabilities summing above one name the triple") {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 2;
    spec.rng_seed = 1;
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 2, 5.0, 0.0, 0.0, EventClass::HomeRun));
    spec.params.emplace(
        EventClass::Single,
        constant_params(2, 2, 5.0, 0.0, 0.0, EventClass::Single));
    spec.schedule = {{0, 1, -1, 10}};
    try {
        generate(spec);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bat=1") != std::string::npos);  // visitor side first
        CHECK(msg.find("park=0") != std::string::npos);
    }
}

TEST_CASE("scheduled parks: defaults, neutral sites, and misuse") {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 3;
    spec.rng_seed = 3;
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 3, 0.0, 0.0, 0.0, EventClass::HomeRun));
    SUBCASE("park -1 defaults to the home team's park") {
        spec.schedule = {{1, 0, -1, 2}};
        Dataset ds = generate(spec).dataset;
        CHECK(ds.plate_appearances[0].park.index == 1);
    }
    SUBCASE("a neutral park id at or above n_teams is allowed") {
        spec.schedule = {{0, 1, 2, 2}};
        Dataset ds = generate(spec).dataset;
        CHECK(ds.plate_appearances[0].park.index == 2);
    }
    SUBCASE("another club's home park is rejected") {
        spec.schedule = {{0, 1, 1, 2}};
        CHECK_THROWS_AS(generate(spec), DataError);
    }
}

TEST_CASE("spec validation") {
    SyntheticSpec spec;
    spec.n_teams = 2;
    spec.n_parks = 2;
    spec.params.emplace(
        EventClass::HomeRun,
        constant_params(2, 2, 0.0, 0.0, 0.0, EventClass::HomeRun));
    spec.schedule = {{0, 1, -1, 1}};

    SUBCASE("team count") {
        spec.n_teams = 1;
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("fewer parks than teams") {
        spec.n_parks = 1;
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("parameter size mismatch") {
        spec.params.at(EventClass::HomeRun).b.push_back(0.0);
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("planting Other") {
        spec.params.emplace(
            EventClass::Other,
            constant_params(2, 2, 0.0, 0.0, 0.0, EventClass::Other));
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("team out of range") {
        spec.schedule = {{0, 2, -1, 1}};
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("self-play") {
        spec.schedule = {{0, 0, -1, 1}};
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("park out of range") {
        spec.schedule = {{0, 1, 2, 1}};
        CHECK_THROWS_AS(generate(spec), DataError);
    }
    SUBCASE("negative plate appearances") {
        spec.schedule = {{0, 1, -1, -1}};
        CHECK_THROWS_AS(generate(spec), DataError);
    }
}

TEST_CASE("recovery_score") {
    ParameterSet planted =
        planted_params(4, 5, 1234, EventClass::HomeRun, 0.5, 0.4);
    SUBCASE("identical parameters recover perfectly") {
        RecoveryScore s = recovery_score(planted, planted);
        CHECK(s.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.max_abs_pf_error == 0.0);
    }
    SUBCASE("gauge-shifted parameters score as identical") {
        ParameterSet shifted = planted;
        for (auto& v : shifted.b) v += 2.0;
        for (auto& v : shifted.d) v += 0.5;
        for (auto& v : shifted.r) v += 1.5;
        RecoveryScore s = recovery_score(planted, shifted);
        CHECK(s.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.max_abs_pf_error < 1e-12);
    }
    SUBCASE("constant planted factors: exact match or nothing") {
        ParameterSet flat = constant_params(4, 5, 0.2, 0.1, 0.3,
                                            EventClass::HomeRun);
        CHECK(recovery_score(flat, flat).pearson_r == 1.0);
        ParameterSet off = flat;
        off.r[0] += 0.5;
        CHECK(recovery_score(flat, off).pearson_r == 0.0);
    }
    SUBCASE("park-count mismatch") {
        ParameterSet other = planted_params(4, 6, 5, EventClass::HomeRun,
                                            0.5, 0.4);
        CHECK_THROWS_AS(recovery_score(planted, other), Error);
    }
}

TEST_CASE("an eight-team league recovers its planted park factors") {
    SyntheticSpec spec;
    spec.n_teams = 8;
    spec.n_parks = 8;
    spec.rng_seed = 42;
    ParameterSet planted =
        planted_params(8, 8, 42, EventClass::HomeRun, 0.5, 0.4);
    spec.params.emplace(EventClass::HomeRun, planted);
    spec.schedule = round_robin(8, 200);  // 56 games, 22400 PAs
    Dataset ds = generate(spec).dataset;

    FitConfig cfg;
    FitReport report = fit(ds, EventClass::HomeRun, cfg);
    CHECK(report.converged);
    RecoveryScore score = recovery_score(planted, report.params);
    CHECK(score.pearson_r > 0.9);
}

TEST_CASE("mlb_like_schedule has the big-league shape") {
    auto schedule = mlb_like_schedule(30, 76);
    CHECK(schedule.size() == 2430);
    std::vector<int> home(30, 0);
    std::map<std::pair<int, int>, int> per_pair;
    for (const auto& g : schedule) {
        REQUIRE(g.home_team != g.away_team);
        REQUIRE(g.park == -1);
        REQUIRE(g.n_pa_per_side == 76);
        home[static_cast<std::size_t>(g.home_team)] += 1;
        per_pair[{std::min(g.home_team, g.away_team),
                  std::max(g.home_team, g.away_team)}] += 1;
    }
    for (int h : home) {
        CHECK(h >= 80);
        CHECK(h <= 82);
    }
    CHECK(per_pair.size() == 435);
    for (const auto& [pair, games] : per_pair) {
        CHECK(games >= 5);
        CHECK(games <= 6);
    }
    CHECK_THROWS_AS(mlb_like_schedule(29, 76), Error);
}
