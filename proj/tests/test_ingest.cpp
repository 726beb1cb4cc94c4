#include <doctest.h>

#include <fstream>
#include <sstream>

#include "parkfit/ingest.hpp"
#include "test_util.hpp"

using namespace parkfit;
using testutil::fixture_path;
using testutil::make_row;
using testutil::slurp;

TEST_CASE("classify_play covers the notation table") {
    auto pa_event = [](const char* text) {
        PlayClassification c = classify_play(text);
        REQUIRE(c.is_pa);
        return c.event;
    };
    CHECK(pa_event("HR/78/F") == EventClass::HomeRun);
    CHECK(pa_event("HR") == EventClass::HomeRun);
    CHECK(pa_event("H9") == EventClass::HomeRun);
    CHECK(pa_event("S8/G") == EventClass::Single);
    CHECK(pa_event("S") == EventClass::Single);
    CHECK(pa_event("D7/L") == EventClass::Double);
    CHECK(pa_event("DGR/L") == EventClass::Double);  // not DI
    CHECK(pa_event("T9/F") == EventClass::Triple);
    CHECK(pa_event("W") == EventClass::Walk);
    CHECK(pa_event("W+WP") == EventClass::Walk);  // not WP
    CHECK(pa_event("IW") == EventClass::Walk);
    CHECK(pa_event("I") == EventClass::Walk);
    CHECK(pa_event("K") == EventClass::Other);
    CHECK(pa_event("K+SB2") == EventClass::Other);
    CHECK(pa_event("HP") == EventClass::Other);  // hit-by-pitch, not a homer
    CHECK(pa_event("43/G") == EventClass::Other);
    CHECK(pa_event("7/F") == EventClass::Other);
    CHECK(pa_event("E3/TH") == EventClass::Other);
    CHECK(pa_event("FC5/G") == EventClass::Other);
    CHECK(pa_event("C/E2") == EventClass::Other);

    for (const char* non_pa : {"NP", "BK", "CS2(26)", "DI", "OA", "PB", "WP",
                               "PO1(13)", "POCS2(1361)", "SB2"})
        CHECK_FALSE(classify_play(non_pa).is_pa);

    CHECK_THROWS_AS(classify_play(""), FormatError);
}

namespace {

ParseResult parse_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    REQUIRE(in);
    return parse_event_file(in);
}

std::vector<CanonicalRow> golden_rows(const std::string& name) {
    std::ifstream in(fixture_path(name));
    REQUIRE(in);
    return read_canonical_csv_rows(in);
}

}  // namespace

TEST_CASE("fixtures parse to their golden rows") {
    for (const char* stem :
         {"simple", "neutral", "corrupt", "multigame", "walks"}) {
        CAPTURE(stem);
        ParseResult result = parse_fixture(std::string(stem) + ".EVN");
        std::vector<CanonicalRow> expected =
            golden_rows(std::string(stem) + ".expected.csv");
        CHECK(result.rows == expected);
    }
}

TEST_CASE("corrupt fixture records one row error and continues") {
    ParseResult result = parse_fixture("corrupt.EVN");
    CHECK(result.rows.size() == 9);
    REQUIRE(result.row_errors.size() == 1);
    CHECK(result.row_errors[0].line == 10);
    CHECK(result.row_errors[0].message.find("6 fields") != std::string::npos);
}

TEST_CASE("neutral-site game carries the site park on every row") {
    ParseResult result = parse_fixture("neutral.EVN");
    REQUIRE(!result.rows.empty());
    for (const auto& row : result.rows) CHECK(row.park == "TOK01");
}

TEST_CASE("structural file errors") {
    SUBCASE("play before id") {
        std::ifstream in(fixture_path("badfile.EVN"));
        REQUIRE(in);
        CHECK_THROWS_AS(parse_event_file(in), FormatError);
    }
    SUBCASE("play before team info") {
        std::istringstream in("id,BOS201704030\nplay,1,0,x,00,X,S7\n");
        CHECK_THROWS_AS(parse_event_file(in), FormatError);
    }
    SUBCASE("season undeterminable without a date") {
        std::istringstream in(
            "id,BOS201704030\ninfo,visteam,NYA\ninfo,hometeam,BOS\n"
            "play,1,0,x,00,X,S7\n");
        CHECK_THROWS_AS(parse_event_file(in), FormatError);
    }
    SUBCASE("forced season substitutes for a missing date") {
        std::istringstream in(
            "id,BOS201704030\ninfo,visteam,NYA\ninfo,hometeam,BOS\n"
            "play,1,0,x,00,X,S7\n");
        ParseResult result = parse_event_file(in, 2017);
        REQUIRE(result.rows.size() == 1);
        CHECK(result.rows[0].season == 2017);
    }
}

TEST_CASE("row multiset is invariant to com and data record placement") {
    const std::string head =
        "id,BOS201704030\ninfo,visteam,NYA\ninfo,hometeam,BOS\n"
        "info,date,2017/04/03\n";
    std::istringstream a(head +
                         "com,\"x\"\nplay,1,0,p1,00,X,S7\nplay,1,1,p2,00,X,K\n"
                         "data,er,p1,0\n");
    std::istringstream b(head +
                         "play,1,0,p1,00,X,S7\ndata,er,p1,0\ncom,\"x\"\n"
                         "play,1,1,p2,00,X,K\n");
    CHECK(parse_event_file(a).rows == parse_event_file(b).rows);
}

TEST_CASE("unknown record types are counted, not fatal") {
    std::istringstream in(
        "id,BOS201704030\ninfo,visteam,NYA\ninfo,hometeam,BOS\n"
        "info,date,2017/04/03\nfrobnicate,1,2\nplay,1,0,p1,00,X,S7\n");
    ParseResult result = parse_event_file(in);
    CHECK(result.rows.size() == 1);
    CHECK(result.unknown_records == 1);
}

TEST_CASE("canonical CSV writes and reads are inverse") {
    SUBCASE("empty row list gives a header-only file") {
        std::ostringstream out;
        write_canonical_csv(out, {});
        CHECK(out.str() == std::string(kCanonicalHeader) + "\n");
    }
    SUBCASE("single BB row becomes one Walk plate appearance") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "AAA", "AAA", "BBB", "AAA", "BB")};
        std::ostringstream out;
        write_canonical_csv(out, rows);
        std::istringstream in(out.str());
        Dataset ds = read_canonical_csv(in);
        REQUIRE(ds.plate_appearances.size() == 1);
        CHECK(ds.plate_appearances[0].event == EventClass::Walk);
    }
    SUBCASE("fixture rows round-trip exactly and byte-identically") {
        for (const char* stem :
             {"simple", "neutral", "corrupt", "multigame", "walks"}) {
            CAPTURE(stem);
            std::vector<CanonicalRow> rows =
                golden_rows(std::string(stem) + ".expected.csv");
            std::ostringstream first;
            write_canonical_csv(first, rows);
            std::istringstream back(first.str());
            std::vector<CanonicalRow> reread = read_canonical_csv_rows(back);
            CHECK(reread == rows);
            std::ostringstream second;
            write_canonical_csv(second, reread);
            CHECK(second.str() == first.str());
            CHECK(first.str() == slurp(fixture_path(std::string(stem) +
                                                    ".expected.csv")));
        }
    }
}

TEST_CASE("canonical CSV reader rejects malformed input") {
    SUBCASE("wrong header") {
        std::istringstream in("season,game_id\n");
        CHECK_THROWS_AS(read_canonical_csv_rows(in), FormatError);
    }
    SUBCASE("unknown event code names the line") {
        std::istringstream in(std::string(kCanonicalHeader) +
                              "\n2017,G1,AAA,AAA,BBB,AAA,ZZ\n");
        try {
            read_canonical_csv_rows(in);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
            CHECK(std::string(e.what()).find("ZZ") != std::string::npos);
        }
    }
    SUBCASE("wrong field count names the line") {
        std::istringstream in(std::string(kCanonicalHeader) +
                              "\n2017,G1,AAA\n");
        CHECK_THROWS_AS(read_canonical_csv_rows(in), FormatError);
    }
}

TEST_CASE("build_dataset binds modal home parks") {
    SUBCASE("team ids follow first appearance, batting side first") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "HHH", "HHH", "VVV", "HHH", "1B"),
        };
        Dataset ds = build_dataset(rows);
        CHECK(ds.teams.name(0) == "VVV");
        CHECK(ds.teams.name(1) == "HHH");
        // park 0 belongs to team 0 even though VVV never hosts: phantom park.
        CHECK(ds.parks.name(0) == "VVV");
        CHECK(ds.parks.name(1) == "HHH");
        CHECK(ds.n_parks() == 2);
    }
    SUBCASE("minority host site becomes a neutral park id >= n_teams") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "STA", "AAA", "BBB", "AAA", "1B"),
            make_row(2017, "G2", "STA", "AAA", "BBB", "AAA", "2B"),
            make_row(2017, "G3", "NEU", "AAA", "BBB", "AAA", "3B"),
            make_row(2017, "G4", "STB", "BBB", "AAA", "BBB", "HR"),
        };
        Dataset ds = build_dataset(rows);
        // Teams: BBB (bats first) = 0, AAA = 1. Modal parks: BBB -> STB,
        // AAA -> STA (2 vs 1 over NEU). NEU is neutral.
        CHECK(ds.teams.name(0) == "BBB");
        CHECK(ds.parks.name(0) == "STB");
        CHECK(ds.parks.name(1) == "STA");
        REQUIRE(ds.n_parks() == 3);
        CHECK(ds.parks.name(2) == "NEU");
        CHECK(ds.plate_appearances[2].park.index == 2);  // >= n_teams
    }
    SUBCASE("modal tie breaks toward the first-seen park") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "PK1", "AAA", "BBB", "AAA", "1B"),
            make_row(2017, "G2", "PK2", "AAA", "BBB", "AAA", "1B"),
            make_row(2017, "G3", "PKB", "BBB", "AAA", "BBB", "1B"),
        };
        Dataset ds = build_dataset(rows);
        int aaa = *ds.teams.find("AAA");
        CHECK(ds.parks.name(aaa) == "PK1");
    }
    SUBCASE("two teams sharing a modal park is a data error") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "SHARED", "AAA", "BBB", "AAA", "1B"),
            make_row(2017, "G2", "SHARED", "BBB", "AAA", "BBB", "1B"),
        };
        CHECK_THROWS_AS(build_dataset(rows), DataError);
    }
    SUBCASE("batting equal to defense is a data error") {
        std::vector<CanonicalRow> rows = {
            make_row(2017, "G1", "AAA", "AAA", "AAA", "AAA", "1B"),
        };
        CHECK_THROWS_AS(build_dataset(rows), DataError);
    }
    SUBCASE("rows_from_dataset inverts build_dataset") {
        std::vector<CanonicalRow> rows =
            golden_rows("combined.expected.csv");
        Dataset ds = build_dataset(rows);
        CHECK(rows_from_dataset(ds) == rows);
    }
}

TEST_CASE("sort_canonical_rows orders by season then game id, stably") {
    std::vector<CanonicalRow> rows = {
        make_row(2018, "G1", "P", "H", "A", "H", "1B"),
        make_row(2017, "G2", "P", "H", "A", "H", "2B"),
        make_row(2017, "G1", "P", "H", "A", "H", "3B"),
        make_row(2017, "G1", "P", "H", "H", "A", "HR"),
    };
    sort_canonical_rows(rows);
    CHECK(rows[0].event == "3B");
    CHECK(rows[1].event == "HR");  // in-file order kept within G1
    CHECK(rows[2].event == "2B");
    CHECK(rows[3].event == "1B");
}
