#include "parkfit/types.hpp"

#include <algorithm>

namespace parkfit {

std::string_view event_code(EventClass e) {
    switch (e) {
        case EventClass::HomeRun: return "HR";
        case EventClass::Single: return "1B";
        case EventClass::Double: return "2B";
        case EventClass::Triple: return "3B";
        case EventClass::Walk: return "BB";
        case EventClass::Other: return "OTHER";
    }
    throw Error("unknown event class");
}

std::optional<EventClass> event_from_code(std::string_view code) {
    if (code == "HR") return EventClass::HomeRun;
    if (code == "1B") return EventClass::Single;
    if (code == "2B") return EventClass::Double;
    if (code == "3B") return EventClass::Triple;
    if (code == "BB") return EventClass::Walk;
    if (code == "OTHER") return EventClass::Other;
    return std::nullopt;
}

int Registry::add(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

std::optional<int> Registry::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Registry::name(int id) const {
    if (id < 0 || id >= static_cast<int>(names_.size()))
        throw Error("registry id out of range: " + std::to_string(id));
    return names_[static_cast<std::size_t>(id)];
}

std::vector<int> Dataset::seasons() const {
    std::vector<int> out;
    for (const auto& pa : plate_appearances) out.push_back(pa.season);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Dataset Dataset::filter_season(int season) const {
    Dataset out;
    out.teams = teams;
    out.parks = parks;
    for (const auto& pa : plate_appearances)
        if (pa.season == season) out.plate_appearances.push_back(pa);
    return out;
}

int binary_outcome(const PlateAppearance& pa, EventClass target) {
    if (target == EventClass::Other)
        throw Error("binary_outcome target must be a modeled event");
    return pa.event == target ? 1 : 0;
}

DatasetSummary dataset_summary(const Dataset& ds) {
    if (ds.empty()) throw DataError("dataset_summary requires a non-empty dataset");
    DatasetSummary s;
    for (const auto& pa : ds.plate_appearances) {
        s.counts[static_cast<std::size_t>(pa.event)] += 1;
        s.total += 1;
    }
    return s;
}

}  // namespace parkfit
