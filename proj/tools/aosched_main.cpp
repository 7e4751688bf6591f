#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sched/bench.hpp"
#include "sched/generator.hpp"
#include "sched/oracle.hpp"

namespace {

using namespace sched;

std::vector<std::string> splitList(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "10", "0.1", "1/2" and the generator's "1d2" fallback.
std::optional<Ratio> parseRatioText(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto isNumber = [](const std::string& t) {
        return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    for (char sep : {'/', 'd'}) {
        size_t pos = s.find(sep);
        if (pos == std::string::npos) continue;
        std::string num = s.substr(0, pos), den = s.substr(pos + 1);
        if (!isNumber(num) || !isNumber(den) || den == "0") return std::nullopt;
        return Ratio(std::stoll(num), std::stoll(den));
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) {
        if (!isNumber(s)) return std::nullopt;
        return Ratio(std::stoll(s), 1);
    }
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!isNumber(whole) || !isNumber(frac) || frac.empty() || frac.size() > 9)
        return std::nullopt;
    long long den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Ratio(std::stoll(whole) * den + std::stoll(frac), den);
}

bool applyPruning(const std::string& text, SolveConfig& cfg, std::string& err) {
    cfg.identicalFilter = false;
    cfg.fixedOrderFilter = false;
    cfg.useUpperBound = false;
    for (const std::string& tok : splitList(text)) {
        if (tok == "all") {
            cfg.identicalFilter = true;
            cfg.fixedOrderFilter = true;
            cfg.useUpperBound = true;
        } else if (tok == "none" || tok.empty()) {
            // nothing enabled
        } else if (tok == "+identical") {
            cfg.identicalFilter = true;
        } else if (tok == "+fixed-order") {
            cfg.fixedOrderFilter = true;
        } else if (tok == "+upper-bound") {
            cfg.useUpperBound = true;
        } else {
            err = "unknown pruning option '" + tok + "'";
            return false;
        }
    }
    return true;
}

struct CommonArgs {
    std::string model = "ao";
    int procs = 2;
    double timeout = 120.0;
    uint64_t maxStates = 2'000'000;
    std::string heuristics = "mft+cpl";
    std::string pruning = "all";
    std::string ready = "lookahead";
    std::string select = "in-order";
    std::string reverseJoins = "on";
    bool redactTiming = false;
};

void addCommonFlags(CLI::App* cmd, CommonArgs& a, bool withModel) {
    if (withModel)
        cmd->add_option("--model", a.model, "search model: ao or els")
            ->check(CLI::IsMember({"ao", "els"}));
    cmd->add_option("--procs", a.procs, "number of processors")->check(CLI::PositiveNumber);
    cmd->add_option("--timeout", a.timeout, "solver time limit in seconds");
    cmd->add_option("--max-states", a.maxStates, "state budget before giving up");
    cmd->add_option("--heuristics", a.heuristics,
                    "bound profile: baseline, mft, cpl or mft+cpl");
    cmd->add_option("--pruning", a.pruning,
                    "all, none, or a comma list of +identical,+fixed-order,+upper-bound");
    cmd->add_option("--ready-condition", a.ready, "ordering readiness: lookahead or simple")
        ->check(CLI::IsMember({"lookahead", "simple"}));
    cmd->add_option("--select", a.select, "processor selection: in-order or round-robin")
        ->check(CLI::IsMember({"in-order", "round-robin"}));
    cmd->add_option("--reverse-joins", a.reverseJoins,
                    "mirror join-like graphs before solving: on or off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_flag("--redact-timing", a.redactTiming, "report zero elapsed time");
}

bool buildSolveConfig(const CommonArgs& a, SolveConfig& cfg, std::string& err) {
    if (auto m = modelFromName(a.model)) cfg.model = *m;
    auto profile = profileFromName(a.heuristics);
    if (!profile) {
        err = "unknown heuristic profile '" + a.heuristics + "'";
        return false;
    }
    cfg.profile = *profile;
    cfg.numProcs = a.procs;
    cfg.limits.timeoutSeconds = a.timeout;
    cfg.limits.maxStates = a.maxStates;
    cfg.ready = *readyFromName(a.ready);
    cfg.select = *selectFromName(a.select);
    cfg.reverseJoins = a.reverseJoins == "on";
    return applyPruning(a.pruning, cfg, err);
}

std::optional<TaskGraph> loadGraph(const std::string& path) {
    try {
        return parseGraphFile(path);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
    }
    return std::nullopt;
}

int runSchedule(const std::string& graphPath, const CommonArgs& args,
                const std::string& outPath, const std::string& statsPath) {
    auto g = loadGraph(graphPath);
    if (!g) return 1;
    SolveConfig cfg;
    std::string err;
    if (!buildSolveConfig(args, cfg, err)) {
        std::cerr << err << "\n";
        return 1;
    }
    SolveOutcome out = solveInstance(*g, cfg);

    if (!statsPath.empty()) {
        SearchStats stats = out.result.stats;
        if (args.redactTiming) stats.elapsed = 0.0;
        std::ofstream f(statsPath);
        f << statsJson(stats) << "\n";
    }

    const SearchStats& st = out.result.stats;
    switch (out.result.outcome) {
        case Outcome::Solved: {
            std::cout << "solved length=" << out.result.length
                      << " states=" << st.statesCreated
                      << " expanded=" << st.statesExpanded;
            if (!args.redactTiming) std::cout << " elapsed=" << st.elapsed << "s";
            std::cout << "\n";
            if (!outPath.empty()) writeScheduleFile(*out.result.schedule, *g, outPath);
            return 0;
        }
        case Outcome::Timeout:
            std::cout << "timeout states=" << st.statesCreated << "\n";
            return 2;
        case Outcome::Memory:
            std::cout << "memory states=" << st.statesCreated << "\n";
            return 3;
    }
    return 1;
}

int runValidate(const std::string& graphPath, const std::string& schedPath) {
    auto g = loadGraph(graphPath);
    if (!g) return 1;
    ScheduleFile sf;
    try {
        sf = readScheduleFile(schedPath, *g);
    } catch (const ScheduleFileError& e) {
        std::cerr << schedPath << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << schedPath << ": " << e.what() << "\n";
        return 1;
    }
    std::vector<Violation> violations = validate(sf.schedule, *g);
    Time len = scheduleLength(sf.schedule, *g);
    if (violations.empty() && sf.declaredLength != len) {
        std::ostringstream msg;
        msg << "declared length " << sf.declaredLength << " but schedule runs to " << len;
        violations.push_back({Violation::Kind::LengthMismatch, msg.str()});
    }
    if (violations.empty()) {
        std::cout << "valid length=" << len << "\n";
        return 0;
    }
    for (const Violation& v : violations) std::cout << v.message << "\n";
    return 4;
}

int runCompare(const std::vector<std::string>& graphPaths, const CommonArgs& args,
               const std::string& modelsText, const std::string& csvPath) {
    std::vector<ModelKind> models;
    if (modelsText == "both") {
        models = {ModelKind::Ao, ModelKind::Els};
    } else {
        for (const std::string& tok : splitList(modelsText)) {
            auto m = modelFromName(tok);
            if (!m) {
                std::cerr << "unknown model '" << tok << "'\n";
                return 1;
            }
            models.push_back(*m);
        }
    }
    std::vector<HeuristicProfile> profiles;
    for (const std::string& tok : splitList(args.heuristics)) {
        auto p = profileFromName(tok);
        if (!p) {
            std::cerr << "unknown heuristic profile '" << tok << "'\n";
            return 1;
        }
        profiles.push_back(*p);
    }

    std::vector<BenchRecord> records;
    std::ostringstream csv;
    csv << csvHeader() << "\n";
    for (const std::string& path : graphPaths) {
        auto g = loadGraph(path);
        if (!g) return 1;
        for (ModelKind model : models) {
            for (HeuristicProfile profile : profiles) {
                CommonArgs one = args;
                one.model = modelName(model);
                one.heuristics = profileName(profile);
                SolveConfig cfg;
                std::string err;
                if (!buildSolveConfig(one, cfg, err)) {
                    std::cerr << err << "\n";
                    return 1;
                }
                SolveOutcome out = solveInstance(*g, cfg);
                BenchRecord rec = makeRecord(path, *g, cfg, out, args.redactTiming);
                csv << csvLine(rec) << "\n";
                records.push_back(std::move(rec));
            }
        }
    }
    if (csvPath.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(csvPath);
        f << csv.str();
        std::cout << profileTable(records);
    }
    return 0;
}

int runGen(const std::string& structures, const std::string& tasksText,
           const std::string& ccrText, const std::string& seedsText,
           const std::string& outDir) {
    std::vector<StructureTag> tags;
    if (structures == "all") {
        for (int i = 0; i <= static_cast<int>(StructureTag::Stencil); ++i)
            tags.push_back(static_cast<StructureTag>(i));
    } else {
        for (const std::string& tok : splitList(structures)) {
            auto t = structureFromName(tok);
            if (!t) {
                std::cerr << "unknown structure '" << tok << "'\n";
                return 1;
            }
            tags.push_back(*t);
        }
    }
    std::vector<int> sizes;
    for (const std::string& tok : splitList(tasksText)) {
        try {
            sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            std::cerr << "bad task count '" << tok << "'\n";
            return 1;
        }
    }
    std::vector<Ratio> ratios;
    for (const std::string& tok : splitList(ccrText)) {
        auto r = parseRatioText(tok);
        if (!r) {
            std::cerr << "bad ccr '" << tok << "'\n";
            return 1;
        }
        ratios.push_back(*r);
    }
    std::vector<uint64_t> seeds;
    for (const std::string& tok : splitList(seedsText)) {
        try {
            seeds.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            std::cerr << "bad seed '" << tok << "'\n";
            return 1;
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    if (ec) {
        std::cerr << outDir << ": " << ec.message() << "\n";
        return 1;
    }
    for (StructureTag tag : tags)
        for (int n : sizes)
            for (const Ratio& r : ratios)
                for (uint64_t seed : seeds) {
                    GenSpec spec;
                    spec.structure = tag;
                    spec.numTasks = n;
                    spec.ccr = r;
                    spec.seed = seed;
                    TaskGraph g = [&] {
                        try {
                            return generateGraph(spec);
                        } catch (const std::invalid_argument& e) {
                            std::cerr << genFileName(spec) << ": " << e.what() << "\n";
                            std::exit(1);
                        }
                    }();
                    std::string path =
                        (std::filesystem::path(outDir) / genFileName(spec)).string();
                    writeGraphFile(g, path);
                    std::cout << path << "\n";
                }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal schedules for task graphs with communication delays"};
    app.require_subcommand(1);

    CommonArgs schedArgs;
    std::string schedGraph, schedOut, schedStats;
    CLI::App* sched = app.add_subcommand("schedule", "solve one graph to optimality");
    sched->add_option("graph", schedGraph, "task graph file")->required();
    addCommonFlags(sched, schedArgs, true);
    sched->add_option("--out", schedOut, "write the schedule here");
    sched->add_option("--stats", schedStats, "write search statistics as JSON");

    std::string valGraph, valSchedule;
    CLI::App* val = app.add_subcommand("validate", "check a schedule against its graph");
    val->add_option("graph", valGraph, "task graph file")->required();
    val->add_option("schedule", valSchedule, "schedule file")->required();

    CommonArgs cmpArgs;
    std::vector<std::string> cmpGraphs;
    std::string cmpModels = "both", cmpCsv;
    CLI::App* cmp = app.add_subcommand("compare", "benchmark models over graphs");
    cmp->add_option("graphs", cmpGraphs, "task graph files")->required()->expected(-1);
    addCommonFlags(cmp, cmpArgs, false);
    cmp->add_option("--models", cmpModels, "ao, els, or both");
    cmp->add_option("--csv", cmpCsv, "write the per-run table here");

    std::string genStructures = "all", genTasks = "8", genCcr = "0", genSeeds = "1",
                genOut = ".";
    CLI::App* gen = app.add_subcommand("gen", "generate task graph files");
    gen->add_option("--structure", genStructures, "structure names, or all");
    gen->add_option("--tasks", genTasks, "task counts, comma separated");
    gen->add_option("--ccr", genCcr, "communication-to-computation ratios");
    gen->add_option("--seeds", genSeeds, "seeds, comma separated");
    gen->add_option("--out", genOut, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (app.got_subcommand(sched)) return runSchedule(schedGraph, schedArgs, schedOut, schedStats);
    if (app.got_subcommand(val)) return runValidate(valGraph, valSchedule);
    if (app.got_subcommand(cmp)) return runCompare(cmpGraphs, cmpArgs, cmpModels, cmpCsv);
    if (app.got_subcommand(gen)) return runGen(genStructures, genTasks, genCcr, genSeeds, genOut);
    return 1;
}
