// parkfit: batch CLI for park-factor estimation.
//   ingest    event files -> canonical CSV + error report
//   fit       canonical CSV -> pairwise fit JSON + proposed-PF CSV
//   evaluate  canonical CSV (+ fits, PF tables) -> log-loss comparison tables
//   synth     spec JSON -> synthetic canonical CSV + tally ledger
// Exit codes: 0 success, 1 usage, 2 data error, 3 numerical divergence.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "parkfit/conventional.hpp"
#include "parkfit/evaluation.hpp"
#include "parkfit/fit.hpp"
#include "parkfit/ingest.hpp"
#include "parkfit/synth.hpp"
#include "parkfit/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace parkfit;

namespace {

constexpr std::string_view kToolVersion = "0.1.0";

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("failed to format double");
    return std::string(buf, ptr);
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file " + path.string());
    return in;
}

// CLI event selector <-> EventClass.
const std::map<std::string, EventClass> kEventFlag = {
    {"hr", EventClass::HomeRun}, {"1b", EventClass::Single},
    {"2b", EventClass::Double},  {"3b", EventClass::Triple},
    {"bb", EventClass::Walk}};

std::vector<EventClass> events_from_flag(const std::string& flag) {
    if (flag == "all")
        return {kModeledEvents.begin(), kModeledEvents.end()};
    return {kEventFlag.at(flag)};
}

std::string event_flag(EventClass ev) {
    for (const auto& [flag, e] : kEventFlag)
        if (e == ev) return flag;
    throw Error("no flag for event class");
}

// Expands files and directories (picking up `exts` inside dirs) into a
// sorted, de-duplicated path list.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& exts) {
    std::vector<fs::path> files;
    for (const auto& raw : inputs) {
        fs::path p(raw);
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p)) {
                if (!entry.is_regular_file()) continue;
                std::string ext = entry.path().extension().string();
                std::transform(ext.begin(), ext.end(), ext.begin(),
                               [](unsigned char c) { return std::tolower(c); });
                if (std::find(exts.begin(), exts.end(), ext) != exts.end())
                    files.push_back(entry.path());
            }
        } else {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

std::optional<int> filename_season(const fs::path& path) {
    std::string name = path.filename().string();
    if (name.size() < 4) return std::nullopt;
    int year = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + 4, year);
    if (ec != std::errc() || ptr != name.data() + 4) return std::nullopt;
    return year;
}

void write_run_json(const fs::path& out_dir, const std::string& subcommand,
                    const json& options, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    json run;
    run["tool"] = "parkfit";
    run["version"] = std::string(kToolVersion);
    run["subcommand"] = subcommand;
    run["options"] = options;
    run["inputs"] = inputs;
    run["outputs"] = outputs;
    auto out = open_out(out_dir / "run.json");
    out << run.dump(2) << '\n';
}

// ---------------------------------------------------------------- ingest --

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string out_dir;
    int season = 0;  // 0: infer per file / per game
};

int run_ingest(const IngestArgs& args) {
    fs::create_directories(args.out_dir);
    auto files = expand_inputs(args.inputs, {".evn", ".eva"});
    if (files.empty()) throw DataError("no input event files found");

    std::vector<CanonicalRow> rows;
    std::vector<std::string> report_lines;
    std::vector<std::string> malformed_files;

    for (const auto& file : files) {
        std::optional<int> forced;
        if (args.season != 0) forced = args.season;
        else forced = filename_season(file);
        try {
            auto in = open_in(file);
            ParseResult result = parse_event_file(in, forced);
            for (const auto& err : result.row_errors)
                report_lines.push_back(file.string() + ":" +
                                       std::to_string(err.line) + ": " +
                                       err.message);
            if (result.unknown_records > 0)
                report_lines.push_back(file.string() + ": skipped " +
                                       std::to_string(result.unknown_records) +
                                       " unknown record(s)");
            rows.insert(rows.end(), result.rows.begin(), result.rows.end());
        } catch (const Error& e) {
            malformed_files.push_back(file.string());
            report_lines.push_back(file.string() + ": MALFORMED: " + e.what());
        }
    }

    sort_canonical_rows(rows);
    if (!rows.empty()) build_dataset(rows);  // registry/consistency validation

    {
        auto out = open_out(fs::path(args.out_dir) / "canonical.csv");
        write_canonical_csv(out, rows);
    }
    {
        auto out = open_out(fs::path(args.out_dir) / "errors.txt");
        for (const auto& line : report_lines) out << line << '\n';
    }

    json options;
    options["season"] = args.season;
    options["n_rows"] = rows.size();
    options["malformed_files"] = malformed_files;
    std::vector<std::string> input_names;
    for (const auto& f : files) input_names.push_back(f.string());
    write_run_json(args.out_dir, "ingest", options, input_names,
                   {"canonical.csv", "errors.txt"});

    if (!malformed_files.empty()) {
        std::cerr << "parkfit ingest: " << malformed_files.size()
                  << " malformed file(s); see errors.txt\n";
        return 2;
    }
    return 0;
}

// ------------------------------------------------------------------- fit --

struct FitArgs {
    std::string input;
    std::string out_dir;
    int season = 0;  // 0: every season in the file
    std::string event = "all";
    double alpha = 0.0;
    int max_epochs = 10000;
    double tol = 1e-7;
    bool reference = false;
    int threads = 0;
    bool no_gauge_fix = false;
};

json params_to_json(const ParameterSet& params, const Dataset& ds) {
    json j;
    j["b"] = params.b;
    j["d"] = params.d;
    j["r"] = params.r;
    j["teams"] = ds.teams.names();
    j["parks"] = ds.parks.names();
    return j;
}

json fit_report_to_json(const FitReport& report, const Dataset& ds) {
    json j;
    j["season"] = report.params.season;
    j["event"] = std::string(event_code(report.params.event));
    j["config"] = {
        {"alpha", report.config.alpha},
        {"max_epochs", report.config.max_epochs},
        {"convergence_tol", report.config.convergence_tol},
        {"init_value", report.config.init_value},
        {"gauge_fix", report.config.gauge_fix},
        {"exec", report.config.exec == ExecPath::Serial ? "serial" : "blocked"},
    };
    j["epochs_run"] = report.epochs_run;
    j["converged"] = report.converged;
    j["final_loss"] = report.final_loss;
    j["loss_trace"] = report.loss_trace;
    j["params"] = params_to_json(report.params, ds);
    j["warnings"] = report.warnings;
    j["low_confidence_parks"] = report.low_confidence_parks;
    return j;
}

void write_pf_csv(const fs::path& path, const FitReport& report,
                  const Dataset& ds) {
    auto out = open_out(path);
    out << "season,event,park,r,pf_proposed\n";
    std::vector<double> pfs = proposed_pf_all(report.params);
    for (std::size_t k = 0; k < pfs.size(); ++k)
        out << report.params.season << ','
            << event_code(report.params.event) << ','
            << ds.parks.name(static_cast<int>(k)) << ','
            << fmt_double(report.params.r[k]) << ',' << fmt_double(pfs[k])
            << '\n';
}

int run_fit(const FitArgs& args) {
    fs::create_directories(args.out_dir);
#ifdef _OPENMP
    if (args.threads > 0) omp_set_num_threads(args.threads);
#endif
    auto in = open_in(args.input);
    Dataset ds = read_canonical_csv(in);
    if (ds.empty()) throw DataError("canonical CSV has no plate appearances");

    std::vector<int> seasons;
    if (args.season != 0) {
        auto all = ds.seasons();
        if (std::find(all.begin(), all.end(), args.season) == all.end())
            throw DataError("season " + std::to_string(args.season) +
                            " not present in " + args.input);
        seasons = {args.season};
    } else {
        seasons = ds.seasons();
    }

    FitConfig cfg;
    cfg.alpha = args.alpha;
    cfg.max_epochs = args.max_epochs;
    cfg.convergence_tol = args.tol;
    cfg.gauge_fix = !args.no_gauge_fix;
    cfg.exec = args.reference ? ExecPath::Serial : ExecPath::Blocked;

    std::vector<std::string> outputs;
    for (int season : seasons) {
        Dataset slice = ds.filter_season(season);
        for (EventClass ev : events_from_flag(args.event)) {
            FitReport report = fit(slice, ev, cfg);
            const std::string stem =
                std::to_string(season) + "_" + event_flag(ev);
            {
                auto out = open_out(fs::path(args.out_dir) /
                                    ("fit_" + stem + ".json"));
                out << fit_report_to_json(report, ds).dump(2) << '\n';
            }
            write_pf_csv(fs::path(args.out_dir) / ("pf_proposed_" + stem + ".csv"),
                         report, ds);
            outputs.push_back("fit_" + stem + ".json");
            outputs.push_back("pf_proposed_" + stem + ".csv");
            std::cerr << "fit season " << season << " event "
                      << event_code(ev) << ": "
                      << (report.converged ? "converged" : "max epochs") << " in "
                      << report.epochs_run << " epochs, loss "
                      << fmt_double(report.final_loss) << '\n';
        }
    }

    json options;
    options["season"] = args.season;
    options["event"] = args.event;
    options["alpha"] = args.alpha;
    options["max_epochs"] = args.max_epochs;
    options["tol"] = args.tol;
    options["reference"] = args.reference;
    options["threads"] = args.threads;
    options["gauge_fix"] = !args.no_gauge_fix;
    write_run_json(args.out_dir, "fit", options, {args.input}, outputs);
    return 0;
}

// -------------------------------------------------------------- evaluate --

struct EvaluateArgs {
    std::string input;
    std::string out_dir;
    std::vector<std::string> fits;
    std::vector<std::string> pfs;
    std::vector<std::string> models = {"baseline", "conventional", "pairwise"};
    int season = 0;
    std::string event = "all";
    std::string format = "csv";
};

// Loads a fit JSON and re-aligns its parameters onto `ds` registries by
// name. Returns nothing when the fit does not cover the dataset.
std::optional<FitReport> load_fit_json(const fs::path& path, const Dataset& ds,
                                       std::vector<std::string>& problems) {
    json j;
    try {
        auto in = open_in(path);
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("cannot parse fit JSON " + path.string() + ": " + e.what());
    }
    try {
        FitReport report;
        report.params.season = j.at("season").get<int>();
        auto ev = event_from_code(j.at("event").get<std::string>());
        if (!ev) throw DataError("unknown event in " + path.string());
        report.params.event = *ev;
        const auto& params = j.at("params");
        std::vector<double> b = params.at("b").get<std::vector<double>>();
        std::vector<double> d = params.at("d").get<std::vector<double>>();
        std::vector<double> r = params.at("r").get<std::vector<double>>();
        std::vector<std::string> teams =
            params.at("teams").get<std::vector<std::string>>();
        std::vector<std::string> parks =
            params.at("parks").get<std::vector<std::string>>();
        if (teams.size() != b.size() || teams.size() != d.size() ||
            parks.size() != r.size())
            throw DataError("fit JSON " + path.string() +
                            " has inconsistent registry sizes");

        std::map<std::string, std::size_t> team_idx, park_idx;
        for (std::size_t i = 0; i < teams.size(); ++i) team_idx[teams[i]] = i;
        for (std::size_t i = 0; i < parks.size(); ++i) park_idx[parks[i]] = i;

        report.params.b.resize(static_cast<std::size_t>(ds.n_teams()));
        report.params.d.resize(static_cast<std::size_t>(ds.n_teams()));
        report.params.r.resize(static_cast<std::size_t>(ds.n_parks()));
        for (int t = 0; t < ds.n_teams(); ++t) {
            auto it = team_idx.find(ds.teams.name(t));
            if (it == team_idx.end()) {
                problems.push_back(path.string() + ": team " + ds.teams.name(t) +
                                   " missing from fit registry");
                return std::nullopt;
            }
            report.params.b[static_cast<std::size_t>(t)] = b[it->second];
            report.params.d[static_cast<std::size_t>(t)] = d[it->second];
        }
        for (int k = 0; k < ds.n_parks(); ++k) {
            auto it = park_idx.find(ds.parks.name(k));
            if (it == park_idx.end()) {
                problems.push_back(path.string() + ": park " + ds.parks.name(k) +
                                   " missing from fit registry");
                return std::nullopt;
            }
            report.params.r[static_cast<std::size_t>(k)] = r[it->second];
        }
        return report;
    } catch (const json::exception& e) {
        throw DataError("fit JSON " + path.string() + " missing fields: " +
                        e.what());
    }
}

std::vector<ConventionalTable> load_pf_tables(
    const std::vector<fs::path>& paths, const Dataset& ds) {
    std::vector<ConventionalTable> tables;
    auto table_for = [&](int season, EventClass ev) -> ConventionalTable& {
        for (auto& t : tables)
            if (t.season == season && t.event == ev) return t;
        ConventionalTable t;
        t.season = season;
        t.event = ev;
        t.team_pf.resize(static_cast<std::size_t>(ds.n_teams()));
        tables.push_back(std::move(t));
        return tables.back();
    };
    for (const auto& path : paths) {
        auto in = open_in(path);
        std::string line;
        if (!std::getline(in, line))
            throw DataError("empty PF table " + path.string());
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != "season,event,team,park,pf")
            throw DataError("PF table " + path.string() + " header mismatch");
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string season_s, event_s, team_s, park_s, pf_s;
            if (!std::getline(ss, season_s, ',') ||
                !std::getline(ss, event_s, ',') ||
                !std::getline(ss, team_s, ',') ||
                !std::getline(ss, park_s, ',') || !std::getline(ss, pf_s))
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": expected 5 fields");
            auto ev = event_from_code(event_s);
            if (!ev || *ev == EventClass::Other)
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": bad event code '" + event_s + "'");
            auto team = ds.teams.find(team_s);
            if (!team)
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": unknown team '" + team_s + "'");
            ConventionalTable& table = table_for(std::stoi(season_s), *ev);
            table.team_pf[static_cast<std::size_t>(*team)] = std::stod(pf_s);
        }
    }
    return tables;
}

int run_evaluate(const EvaluateArgs& args) {
    fs::create_directories(args.out_dir);
    auto in = open_in(args.input);
    Dataset ds = read_canonical_csv(in);
    if (ds.empty()) throw DataError("canonical CSV has no plate appearances");
    if (args.season != 0) {
        ds = ds.filter_season(args.season);
        if (ds.empty())
            throw DataError("season " + std::to_string(args.season) +
                            " not present in " + args.input);
    }

    const std::vector<EventClass> events = events_from_flag(args.event);
    auto wants = [&](const char* m) {
        return std::find(args.models.begin(), args.models.end(), m) !=
               args.models.end();
    };

    // Conventional PFs: user-supplied tables win, else recomputed from data.
    std::vector<ConventionalTable> pf_tables;
    if (wants("conventional")) {
        if (!args.pfs.empty()) {
            pf_tables = load_pf_tables(expand_inputs(args.pfs, {".csv"}), ds);
        } else {
            for (int season : ds.seasons())
                for (EventClass ev : events)
                    pf_tables.push_back(conventional_table(ds, season, ev));
        }
    }

    std::vector<FitReport> fits;
    std::vector<std::string> problems;
    if (wants("pairwise"))
        for (const auto& path : expand_inputs(args.fits, {".json"})) {
            if (path.filename() == "run.json") continue;
            if (auto report = load_fit_json(path, ds, problems))
                fits.push_back(std::move(*report));
        }

    EvalReport report = improvement_report(ds, pf_tables, fits, events);

    // Keep only requested models.
    auto requested = [&](ModelKind m) {
        return wants(std::string(model_name(m)).c_str());
    };
    std::vector<EvalRow> rows;
    for (const auto& row : report.rows)
        if (requested(row.model)) rows.push_back(row);
    std::vector<AbsentCell> absent;
    for (const auto& cell : report.absent)
        if (requested(cell.model)) absent.push_back(cell);
    for (const auto& p : problems)
        absent.push_back({0, EventClass::Other, ModelKind::Pairwise, p});

    std::vector<std::string> outputs = {"eval.csv", "eval_absent.csv",
                                        "bases_walks.csv"};
    {
        auto out = open_out(fs::path(args.out_dir) / "eval.csv");
        out << "season,event,model,log_loss,delta_vs_baseline,n_pa\n";
        for (const auto& row : rows)
            out << row.season << ',' << event_code(row.event) << ','
                << model_name(row.model) << ',' << fmt_double(row.log_loss)
                << ',' << fmt_double(row.delta_vs_baseline) << ',' << row.n_pa
                << '\n';
    }
    {
        auto out = open_out(fs::path(args.out_dir) / "eval_absent.csv");
        out << "season,event,model,reason\n";
        for (const auto& cell : absent)
            out << cell.season << ','
                << (cell.event == EventClass::Other ? "-"
                                                    : event_code(cell.event))
                << ',' << model_name(cell.model) << ',' << cell.reason << '\n';
    }
    {
        auto out = open_out(fs::path(args.out_dir) / "bases_walks.csv");
        out << "season,park,bases_walks_per_pa\n";
        for (int season : ds.seasons()) {
            Dataset slice = ds.filter_season(season);
            for (const auto& [park, value] : bases_walks_per_pa(slice))
                out << season << ',' << ds.parks.name(park) << ','
                    << fmt_double(value) << '\n';
        }
    }

    // PF scatter per cell where both PF sources exist.
    std::vector<json> correlations;
    for (const auto& fit_report : fits) {
        const ConventionalTable* table = nullptr;
        for (const auto& t : pf_tables)
            if (t.season == fit_report.params.season &&
                t.event == fit_report.params.event) {
                table = &t;
                break;
            }
        if (!table) continue;
        std::map<std::string, double> proposed, conventional;
        std::vector<double> pf_all = proposed_pf_all(fit_report.params);
        for (int t = 0; t < ds.n_teams(); ++t) {
            if (!table->team_pf[static_cast<std::size_t>(t)]) continue;
            const std::string park = ds.parks.name(t);
            proposed[park] = pf_all[static_cast<std::size_t>(t)];
            conventional[park] = *table->team_pf[static_cast<std::size_t>(t)];
        }
        if (proposed.size() < 2) continue;
        PfScatter scatter;
        try {
            scatter = pf_scatter_table(proposed, conventional);
        } catch (const Error&) {
            continue;  // zero variance: no scatter for this cell
        }
        const std::string stem = std::to_string(fit_report.params.season) +
                                 "_" + event_flag(fit_report.params.event);
        auto out = open_out(fs::path(args.out_dir) /
                            ("pf_scatter_" + stem + ".csv"));
        out << "season,event,park,pf_proposed,pf_conventional\n";
        for (std::size_t i = 0; i < scatter.parks.size(); ++i)
            out << fit_report.params.season << ','
                << event_code(fit_report.params.event) << ','
                << scatter.parks[i] << ',' << fmt_double(scatter.proposed[i])
                << ',' << fmt_double(scatter.conventional[i]) << '\n';
        outputs.push_back("pf_scatter_" + stem + ".csv");
        correlations.push_back(
            {{"season", fit_report.params.season},
             {"event", std::string(event_code(fit_report.params.event))},
             {"pearson_r", scatter.pearson_r},
             {"n_parks", scatter.parks.size()}});
    }
    if (!correlations.empty()) {
        auto out = open_out(fs::path(args.out_dir) / "pf_correlation.csv");
        out << "season,event,pearson_r,n_parks\n";
        for (const auto& c : correlations)
            out << c.at("season").get<int>() << ','
                << c.at("event").get<std::string>() << ','
                << fmt_double(c.at("pearson_r").get<double>()) << ','
                << c.at("n_parks").get<std::size_t>() << '\n';
        outputs.push_back("pf_correlation.csv");
    }

    if (args.format == "json") {
        json j;
        j["rows"] = json::array();
        for (const auto& row : rows)
            j["rows"].push_back({{"season", row.season},
                                 {"event", std::string(event_code(row.event))},
                                 {"model", std::string(model_name(row.model))},
                                 {"log_loss", row.log_loss},
                                 {"delta_vs_baseline", row.delta_vs_baseline},
                                 {"n_pa", row.n_pa}});
        j["absent"] = json::array();
        for (const auto& cell : absent)
            j["absent"].push_back(
                {{"season", cell.season},
                 {"event", cell.event == EventClass::Other
                               ? "-"
                               : std::string(event_code(cell.event))},
                 {"model", std::string(model_name(cell.model))},
                 {"reason", cell.reason}});
        j["pf_correlations"] = correlations;
        auto out = open_out(fs::path(args.out_dir) / "eval.json");
        out << j.dump(2) << '\n';
        outputs.push_back("eval.json");
    }

    json options;
    options["season"] = args.season;
    options["event"] = args.event;
    options["models"] = args.models;
    options["format"] = args.format;
    options["fits"] = args.fits;
    options["pfs"] = args.pfs;
    write_run_json(args.out_dir, "evaluate", options, {args.input}, outputs);
    return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthArgs {
    std::string input;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

SyntheticSpec spec_from_json(const json& j) {
    SyntheticSpec spec;
    spec.n_teams = j.at("n_teams").get<int>();
    spec.n_parks = j.at("n_parks").get<int>();
    spec.rng_seed = j.value("seed", std::uint64_t{0});
    spec.season = j.value("season", 2000);
    if (j.contains("params"))
        for (const auto& [key, value] : j.at("params").items()) {
            auto ev = event_from_code(key);
            if (!ev || *ev == EventClass::Other)
                throw DataError("synthetic spec has bad event key '" + key + "'");
            ParameterSet params;
            params.event = *ev;
            params.season = spec.season;
            params.b = value.at("b").get<std::vector<double>>();
            params.d = value.at("d").get<std::vector<double>>();
            params.r = value.at("r").get<std::vector<double>>();
            spec.params.emplace(*ev, std::move(params));
        }
    if (j.contains("schedule"))
        for (const auto& g : j.at("schedule")) {
            ScheduledGame game;
            game.home_team = g.at("home").get<int>();
            game.away_team = g.at("away").get<int>();
            game.park = g.value("park", -1);
            game.n_pa_per_side = g.at("n_pa_per_side").get<int>();
            spec.schedule.push_back(game);
        }
    return spec;
}

json ledger_to_json(const SynthLedger& ledger) {
    auto counts_json = [](const std::array<std::uint64_t, kNumEventClasses>& c) {
        json j;
        for (std::size_t e = 0; e < kNumEventClasses; ++e)
            j[std::string(event_code(static_cast<EventClass>(e)))] = c[e];
        return j;
    };
    json j;
    j["algorithm"] = ledger.algorithm;
    j["seed"] = ledger.seed;
    j["totals"] = counts_json(ledger.totals.counts);
    j["totals"]["total"] = ledger.totals.total;
    j["triples"] = json::array();
    for (const auto& t : ledger.triples) {
        json tj;
        tj["bat"] = t.bat;
        tj["def"] = t.def;
        tj["park"] = t.park;
        tj["counts"] = counts_json(t.counts);
        tj["total"] = t.total;
        j["triples"].push_back(tj);
    }
    return j;
}

int run_synth(const SynthArgs& args) {
    fs::create_directories(args.out_dir);
    json j;
    try {
        auto in = open_in(args.input);
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("cannot parse synthetic spec " + args.input + ": " +
                        e.what());
    }
    SyntheticSpec spec;
    try {
        spec = spec_from_json(j);
    } catch (const json::exception& e) {
        throw DataError("synthetic spec " + args.input + " missing fields: " +
                        e.what());
    }
    if (args.seed_set) spec.rng_seed = args.seed;

    SynthResult result = generate(spec);
    {
        auto out = open_out(fs::path(args.out_dir) / "canonical.csv");
        write_canonical_csv(out, rows_from_dataset(result.dataset));
    }
    {
        auto out = open_out(fs::path(args.out_dir) / "ledger.json");
        out << ledger_to_json(result.ledger).dump(2) << '\n';
    }

    json options;
    options["seed"] = spec.rng_seed;
    options["season"] = spec.season;
    options["n_teams"] = spec.n_teams;
    options["n_parks"] = spec.n_parks;
    options["n_games"] = spec.schedule.size();
    write_run_json(args.out_dir, "synth", options, {args.input},
                   {"canonical.csv", "ledger.json"});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"park-factor toolkit: ingest, fit, evaluate, synthesize"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    IngestArgs ingest_args;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse event files into canonical CSV");
    ingest_cmd->add_option("--input", ingest_args.inputs,
                           "event files or directories (.EVN/.EVA)")
        ->required();
    ingest_cmd->add_option("--out", ingest_args.out_dir, "output directory")
        ->required();
    ingest_cmd->add_option("--season", ingest_args.season,
                           "season year override for all files");

    FitArgs fit_args;
    auto* fit_cmd =
        app.add_subcommand("fit", "fit the pairwise model on a canonical CSV");
    fit_cmd->add_option("--input", fit_args.input, "canonical CSV")->required();
    fit_cmd->add_option("--out", fit_args.out_dir, "output directory")
        ->required();
    fit_cmd->add_option("--season", fit_args.season,
                        "season to fit (default: every season present)");
    fit_cmd->add_option("--event", fit_args.event, "event class")
        ->check(CLI::IsMember({"hr", "1b", "2b", "3b", "bb", "all"}))
        ->default_val("all");
    fit_cmd->add_option("--alpha", fit_args.alpha,
                        "learning rate (default 4 / n_PA)");
    fit_cmd->add_option("--max-epochs", fit_args.max_epochs, "epoch cap")
        ->check(CLI::NonNegativeNumber)
        ->default_val(10000);
    fit_cmd->add_option("--tol", fit_args.tol,
                        "convergence tolerance on max parameter change")
        ->check(CLI::PositiveNumber)
        ->default_val(1e-7);
    fit_cmd->add_flag("--reference", fit_args.reference,
                      "use the serial reference kernel");
    fit_cmd->add_option("--threads", fit_args.threads,
                        "worker threads for the blocked kernel (0 = default)")
        ->check(CLI::NonNegativeNumber);
    fit_cmd->add_flag("--no-gauge-fix", fit_args.no_gauge_fix,
                      "skip the mean(d)=mean(r)=0 normalization");

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand(
        "evaluate", "score baseline/conventional/pairwise with log-loss");
    eval_cmd->add_option("--input", eval_args.input, "canonical CSV")
        ->required();
    eval_cmd->add_option("--out", eval_args.out_dir, "output directory")
        ->required();
    eval_cmd->add_option("--fits", eval_args.fits,
                         "fit report JSONs (files or directories)");
    eval_cmd->add_option("--pfs", eval_args.pfs,
                         "conventional PF tables (default: recompute)");
    eval_cmd->add_option("--models", eval_args.models, "models to score")
        ->check(CLI::IsMember({"baseline", "conventional", "pairwise"}));
    eval_cmd->add_option("--season", eval_args.season, "restrict to one season");
    eval_cmd->add_option("--event", eval_args.event, "event class")
        ->check(CLI::IsMember({"hr", "1b", "2b", "3b", "bb", "all"}))
        ->default_val("all");
    eval_cmd->add_option("--format", eval_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand(
        "synth", "generate a synthetic dataset from a spec JSON");
    synth_cmd->add_option("--input", synth_args.input, "spec JSON")->required();
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")
        ->required();
    auto* seed_opt =
        synth_cmd->add_option("--seed", synth_args.seed, "override spec seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    synth_args.seed_set = seed_opt->count() > 0;

    try {
        if (ingest_cmd->parsed()) return run_ingest(ingest_args);
        if (fit_cmd->parsed()) return run_fit(fit_args);
        if (eval_cmd->parsed()) return run_evaluate(eval_args);
        if (synth_cmd->parsed()) return run_synth(synth_args);
        std::cerr << "parkfit: no subcommand\n";
        return 1;
    } catch (const DivergenceError& e) {
        std::cerr << "parkfit: divergence: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "parkfit: error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "parkfit: error: " << e.what() << '\n';
        return 2;
    }
}
