#include "parkfit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace parkfit {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool starts_with(std::string_view text, std::string_view prefix) {
    return text.size() >= prefix.size() &&
           text.substr(0, prefix.size()) == prefix;
}

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::string line_msg(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

PlayClassification classify_play(std::string_view event_text) {
    if (event_text.empty()) throw FormatError("empty play event text");
    // Baserunning-only and no-play codes: the batter's turn is not complete,
    // so no plate appearance is recorded. Longer codes take precedence over
    // single-letter hit codes (SB vs S, DI vs D, WP vs W, ...).
    static constexpr std::string_view kNonPa[] = {
        "NP", "BK", "POCS", "PO", "CS", "DI", "OA", "PB", "WP", "SB"};
    for (std::string_view code : kNonPa)
        if (starts_with(event_text, code)) return {false, EventClass::Other};
    if (starts_with(event_text, "HR")) return {true, EventClass::HomeRun};
    if (starts_with(event_text, "HP")) return {true, EventClass::Other};
    if (starts_with(event_text, "H")) return {true, EventClass::HomeRun};
    if (starts_with(event_text, "S")) return {true, EventClass::Single};
    if (starts_with(event_text, "D")) return {true, EventClass::Double};
    if (starts_with(event_text, "T")) return {true, EventClass::Triple};
    if (starts_with(event_text, "IW")) return {true, EventClass::Walk};
    if (starts_with(event_text, "I")) return {true, EventClass::Walk};
    if (starts_with(event_text, "W")) return {true, EventClass::Walk};
    return {true, EventClass::Other};
}

ParseResult parse_event_file(std::istream& in,
                             std::optional<int> forced_season) {
    ParseResult result;

    struct GameState {
        bool open = false;
        std::string game_id;
        std::string visteam;
        std::string hometeam;
        std::string site;
        std::optional<int> date_year;
        std::optional<int> season;  // resolved lazily at the first play
    } game;

    static constexpr std::string_view kKnownSkipped[] = {
        "version", "start", "sub", "data", "com",
        "badj",    "padj",  "ladj", "radj"};

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv(line);
        const std::string& kind = fields[0];

        if (kind == "id") {
            if (fields.size() < 2 || fields[1].empty())
                throw FormatError(line_msg(line_no, "id record without a game id"));
            game = GameState{};
            game.open = true;
            game.game_id = fields[1];
            continue;
        }
        if (kind == "info") {
            if (!game.open)
                throw FormatError(line_msg(line_no, "info record before any id record"));
            if (fields.size() < 3) continue;  // valueless info keys are legal
            const std::string& key = fields[1];
            const std::string& value = fields[2];
            if (key == "visteam") game.visteam = value;
            else if (key == "hometeam") game.hometeam = value;
            else if (key == "site") game.site = value;
            else if (key == "date" && value.size() >= 4)
                game.date_year = parse_int(std::string_view(value).substr(0, 4));
            continue;
        }
        if (kind == "play") {
            if (!game.open)
                throw FormatError(line_msg(line_no, "play record before any id record"));
            if (game.visteam.empty() || game.hometeam.empty())
                throw FormatError(line_msg(
                    line_no, "play record before visteam/hometeam info in game " +
                                 game.game_id));
            if (!game.season) {
                if (forced_season) game.season = *forced_season;
                else if (game.date_year) game.season = *game.date_year;
                else
                    throw FormatError(line_msg(
                        line_no, "cannot determine season for game " + game.game_id +
                                     " (no info,date and no explicit season)"));
            }
            // play,inning,half,batter,count,pitches,event
            if (fields.size() != 7) {
                result.row_errors.push_back(
                    {line_no, "play record has " + std::to_string(fields.size()) +
                                  " fields, expected 7"});
                continue;
            }
            const std::string& half = fields[2];
            if (half != "0" && half != "1") {
                result.row_errors.push_back(
                    {line_no, "bad half-inning flag '" + half + "'"});
                continue;
            }
            PlayClassification cls;
            try {
                cls = classify_play(fields[6]);
            } catch (const FormatError& e) {
                result.row_errors.push_back({line_no, e.what()});
                continue;
            }
            if (!cls.is_pa) continue;

            CanonicalRow row;
            row.season = *game.season;
            row.game_id = game.game_id;
            row.park = game.site.empty() ? game.hometeam : game.site;
            row.home_team = game.hometeam;
            row.batting_team = half == "0" ? game.visteam : game.hometeam;
            row.defense_team = half == "0" ? game.hometeam : game.visteam;
            row.event = std::string(event_code(cls.event));
            result.rows.push_back(std::move(row));
            continue;
        }
        bool known = false;
        for (std::string_view k : kKnownSkipped)
            if (kind == k) { known = true; break; }
        if (!known) ++result.unknown_records;
    }
    return result;
}

void write_canonical_csv(std::ostream& out,
                         const std::vector<CanonicalRow>& rows) {
    out << kCanonicalHeader << '\n';
    for (const auto& r : rows)
        out << r.season << ',' << r.game_id << ',' << r.park << ','
            << r.home_team << ',' << r.batting_team << ',' << r.defense_team
            << ',' << r.event << '\n';
}

std::vector<CanonicalRow> read_canonical_csv_rows(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw FormatError("empty canonical CSV");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCanonicalHeader)
        throw FormatError("canonical CSV header mismatch, got '" + line + "'");

    std::vector<CanonicalRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv(line);
        if (f.size() != 7)
            throw FormatError(line_msg(line_no, "expected 7 fields, got " +
                                                    std::to_string(f.size())));
        std::optional<int> season = parse_int(f[0]);
        if (!season)
            throw FormatError(line_msg(line_no, "bad season '" + f[0] + "'"));
        if (!event_from_code(f[6]))
            throw FormatError(line_msg(line_no, "unknown event code '" + f[6] + "'"));
        CanonicalRow row;
        row.season = *season;
        row.game_id = f[1];
        row.park = f[2];
        row.home_team = f[3];
        row.batting_team = f[4];
        row.defense_team = f[5];
        row.event = f[6];
        rows.push_back(std::move(row));
    }
    return rows;
}

Dataset read_canonical_csv(std::istream& in) {
    return build_dataset(read_canonical_csv_rows(in));
}

Dataset build_dataset(const std::vector<CanonicalRow>& rows) {
    Dataset ds;
    for (const auto& r : rows) {
        if (r.batting_team == r.defense_team)
            throw DataError("batting and defense team identical in game " +
                            r.game_id);
        ds.teams.add(r.batting_team);
        ds.teams.add(r.defense_team);
    }
    const int n_teams = ds.teams.size();

    // Modal home park per team: most plate appearances hosted, first park
    // seen winning ties (count, then first-occurrence index).
    struct ParkTally {
        std::size_t count = 0;
        std::size_t first_seen = 0;
    };
    std::vector<std::map<std::string, ParkTally>> hosted(
        static_cast<std::size_t>(n_teams));
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        const auto& r = rows[idx];
        auto home = ds.teams.find(r.home_team);
        if (!home)
            throw DataError("home team '" + r.home_team +
                            "' never bats or fields (game " + r.game_id + ")");
        auto& tally = hosted[static_cast<std::size_t>(*home)];
        auto [it, inserted] = tally.emplace(r.park, ParkTally{0, idx});
        it->second.count += 1;
    }

    std::vector<std::string> modal(static_cast<std::size_t>(n_teams));
    for (int t = 0; t < n_teams; ++t) {
        const auto& tally = hosted[static_cast<std::size_t>(t)];
        if (tally.empty()) {
            modal[static_cast<std::size_t>(t)] = ds.teams.name(t);  // phantom park
            continue;
        }
        const std::string* best = nullptr;
        ParkTally best_tally;
        for (const auto& [park, pt] : tally) {
            if (!best || pt.count > best_tally.count ||
                (pt.count == best_tally.count &&
                 pt.first_seen < best_tally.first_seen)) {
                best = &park;
                best_tally = pt;
            }
        }
        modal[static_cast<std::size_t>(t)] = *best;
    }

    for (int t = 0; t < n_teams; ++t) {
        const std::string& park = modal[static_cast<std::size_t>(t)];
        if (auto existing = ds.parks.find(park))
            throw DataError("teams '" + ds.teams.name(*existing) + "' and '" +
                            ds.teams.name(t) + "' share home park '" + park + "'");
        int id = ds.parks.add(park);
        if (id != t) throw Error("park registry desync");  // unreachable
    }
    for (const auto& r : rows) ds.parks.add(r.park);

    ds.plate_appearances.reserve(rows.size());
    for (const auto& r : rows) {
        PlateAppearance pa;
        pa.game_id = r.game_id;
        pa.season = r.season;
        pa.batting_team = TeamId{*ds.teams.find(r.batting_team)};
        pa.defense_team = TeamId{*ds.teams.find(r.defense_team)};
        pa.home_team = TeamId{*ds.teams.find(r.home_team)};
        pa.park = ParkId{*ds.parks.find(r.park)};
        auto ev = event_from_code(r.event);
        if (!ev) throw FormatError("unknown event code '" + r.event + "'");
        pa.event = *ev;
        ds.plate_appearances.push_back(std::move(pa));
    }
    return ds;
}

std::vector<CanonicalRow> rows_from_dataset(const Dataset& ds) {
    std::vector<CanonicalRow> rows;
    rows.reserve(ds.plate_appearances.size());
    for (const auto& pa : ds.plate_appearances) {
        CanonicalRow r;
        r.season = pa.season;
        r.game_id = pa.game_id;
        r.park = ds.parks.name(pa.park.index);
        r.home_team = ds.teams.name(pa.home_team.index);
        r.batting_team = ds.teams.name(pa.batting_team.index);
        r.defense_team = ds.teams.name(pa.defense_team.index);
        r.event = std::string(event_code(pa.event));
        rows.push_back(std::move(r));
    }
    return rows;
}

void sort_canonical_rows(std::vector<CanonicalRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const CanonicalRow& a, const CanonicalRow& b) {
                         if (a.season != b.season) return a.season < b.season;
                         return a.game_id < b.game_id;
                     });
}

}  // namespace parkfit
