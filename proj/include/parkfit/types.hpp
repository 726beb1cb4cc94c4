#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace parkfit {

// Error hierarchy. DataError maps to CLI exit code 2, DivergenceError to 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : Error {
    using Error::Error;
};

struct FormatError : DataError {
    using DataError::DataError;
};

struct DivergenceError : Error {
    double alpha;
    DivergenceError(const std::string& msg, double a) : Error(msg), alpha(a) {}
};

// Shared probability clamp: every model probability is kept in
// [kProbEpsilon, 1 - kProbEpsilon] so log-loss stays finite and
// comparisons between models use the same floor.
inline constexpr double kProbEpsilon = 1e-12;

enum class EventClass : std::uint8_t {
    HomeRun = 0,
    Single = 1,
    Double = 2,
    Triple = 3,
    Walk = 4,
    Other = 5,
};

inline constexpr std::size_t kNumEventClasses = 6;

// Reporting order for the five modeled events (matches the usual
// HR / 1B / 2B / 3B / BB table layout).
inline constexpr std::array<EventClass, 5> kModeledEvents = {
    EventClass::HomeRun, EventClass::Single, EventClass::Double,
    EventClass::Triple, EventClass::Walk};

std::string_view event_code(EventClass e);
std::optional<EventClass> event_from_code(std::string_view code);

struct TeamId {
    std::int32_t index = -1;
    friend bool operator==(TeamId a, TeamId b) { return a.index == b.index; }
    friend bool operator!=(TeamId a, TeamId b) { return a.index != b.index; }
};

struct ParkId {
    std::int32_t index = -1;
    friend bool operator==(ParkId a, ParkId b) { return a.index == b.index; }
    friend bool operator!=(ParkId a, ParkId b) { return a.index != b.index; }
};

struct PlateAppearance {
    std::string game_id;
    TeamId batting_team;
    TeamId defense_team;
    ParkId park;
    TeamId home_team;
    EventClass event = EventClass::Other;
    int season = 0;
};

// Dense name <-> id map. Ids are assigned in first-registration order.
class Registry {
  public:
    int add(const std::string& name);
    std::optional<int> find(const std::string& name) const;
    const std::string& name(int id) const;
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

// Park ids [0, n_teams) are the home parks of the same-indexed team;
// ids >= n_teams are neutral sites. Plate appearances keep ingestion order.
struct Dataset {
    std::vector<PlateAppearance> plate_appearances;
    Registry teams;
    Registry parks;

    int n_teams() const { return teams.size(); }
    int n_parks() const { return parks.size(); }
    bool empty() const { return plate_appearances.empty(); }

    std::vector<int> seasons() const;       // sorted, unique
    Dataset filter_season(int season) const;  // shares registries, keeps order
};

// 1 iff pa.event == target. target must be a modeled event.
int binary_outcome(const PlateAppearance& pa, EventClass target);

struct DatasetSummary {
    std::array<std::uint64_t, kNumEventClasses> counts{};
    std::uint64_t total = 0;
};

DatasetSummary dataset_summary(const Dataset& ds);

}  // namespace parkfit
