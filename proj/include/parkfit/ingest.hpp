#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parkfit/types.hpp"

namespace parkfit {

// One plate appearance in the canonical interchange format. Codes are
// uppercase strings; event is one of HR/1B/2B/3B/BB/OTHER.
struct CanonicalRow {
    int season = 0;
    std::string game_id;
    std::string park;
    std::string home_team;
    std::string batting_team;
    std::string defense_team;
    std::string event;

    friend bool operator==(const CanonicalRow& a, const CanonicalRow& b) {
        return a.season == b.season && a.game_id == b.game_id &&
               a.park == b.park && a.home_team == b.home_team &&
               a.batting_team == b.batting_team &&
               a.defense_team == b.defense_team && a.event == b.event;
    }
};

inline constexpr std::string_view kCanonicalHeader =
    "season,game_id,park,home_team,batting_team,defense_team,event";

struct PlayClassification {
    bool is_pa = false;             // false for pure baserunning / no-play codes
    EventClass event = EventClass::Other;  // meaningful only when is_pa
};

// Maps the event field of a `play` record onto the modeled classes.
// Leading codes NP, BK, CS, DI, OA, PB, WP, PO, POCS, SB mark records that
// are not plate appearances. Empty text throws FormatError.
PlayClassification classify_play(std::string_view event_text);

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct ParseResult {
    std::vector<CanonicalRow> rows;   // file order
    std::vector<RowError> row_errors; // recoverable per-line failures
    std::size_t unknown_records = 0;  // skipped record types
};

// Parses one Retrosheet-style event file. `forced_season` overrides the
// per-game `info,date` year when set. Structural problems (play before id,
// missing team info, undeterminable season) throw FormatError; unparseable
// play lines are collected as row errors and parsing continues.
ParseResult parse_event_file(std::istream& in,
                             std::optional<int> forced_season = std::nullopt);

void write_canonical_csv(std::ostream& out,
                         const std::vector<CanonicalRow>& rows);

// Strict reader: wrong header or a malformed row throws FormatError with the
// offending line number.
std::vector<CanonicalRow> read_canonical_csv_rows(std::istream& in);
Dataset read_canonical_csv(std::istream& in);

// Rebuilds a Dataset from canonical rows. Teams are registered densely in
// first-appearance order (batting side first per row). Each team's home park
// is the most frequent park string over the rows it hosts (first-seen wins
// ties); a team that never hosts binds its own code as a phantom park so
// ParkId i is always team i's park. Two teams sharing a modal park is a
// DataError. Remaining park strings get ids >= n_teams in first-appearance
// order. A game a club hosts away from its own park (park id < n_teams but
// owned by another team) is kept and treated downstream as a road game.
Dataset build_dataset(const std::vector<CanonicalRow>& rows);

// Inverse of build_dataset up to ordering: one row per PA, in sequence order.
std::vector<CanonicalRow> rows_from_dataset(const Dataset& ds);

// Deterministic multi-file merge key: stable-sorts rows by (season, game_id),
// preserving in-file order within a game.
void sort_canonical_rows(std::vector<CanonicalRow>& rows);

}  // namespace parkfit
