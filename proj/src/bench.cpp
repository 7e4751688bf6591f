#include "sched/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "sched/generator.hpp"

namespace sched {

const char* modelName(ModelKind m) { return m == ModelKind::Ao ? "ao" : "els"; }

std::optional<ModelKind> modelFromName(const std::string& name) {
    if (name == "ao") return ModelKind::Ao;
    if (name == "els") return ModelKind::Els;
    return std::nullopt;
}

SolveOutcome solveInstance(const TaskGraph& g, const SolveConfig& cfg) {
    std::optional<TaskGraph> mirrored;
    const TaskGraph* target = &g;
    bool reversed = false;
    if (cfg.reverseJoins) {
        StructureTag tag = classifyStructure(g);
        if (tag == StructureTag::Join || tag == StructureTag::InTree) {
            mirrored = reverseGraph(g);
            target = &*mirrored;
            reversed = true;
        }
    }

    std::optional<Time> ub;
    std::optional<Schedule> ubSchedule;
    if (cfg.useUpperBound) {
        Schedule h = heuristicSchedule(*target, cfg.numProcs);
        ub = scheduleLength(h, *target);
        ubSchedule = std::move(h);
    }

    SearchResult res;
    if (cfg.model == ModelKind::Els) {
        ElsProblem prob(*target,
                        ElsConfig{cfg.numProcs, cfg.identicalFilter, cfg.fixedOrderFilter});
        SearchOptions<ElsProblem> opt;
        opt.limits = cfg.limits;
        opt.duplicates = DuplicateMode::Discard;
        opt.upperBound = ub;
        opt.upperSchedule = ubSchedule;
        res = astar(prob, opt);
    } else {
        AoConfig ac;
        ac.numProcs = cfg.numProcs;
        ac.profile = cfg.profile;
        ac.ready = cfg.ready;
        ac.select = cfg.select;
        ac.identicalFilter = cfg.identicalFilter;
        ac.fixedOrderFilter = cfg.fixedOrderFilter;
        AoProblem prob(*target, ac);
        SearchOptions<AoProblem> opt;
        opt.limits = cfg.limits;
        opt.duplicates = DuplicateMode::Off;
        opt.upperBound = ub;
        opt.upperSchedule = ubSchedule;
        res = astar(prob, opt);
    }

    if (reversed && res.schedule) res.schedule = reverseSchedule(*res.schedule, g);
    return {std::move(res), reversed};
}

BenchRecord makeRecord(const std::string& graphFile, const TaskGraph& g,
                       const SolveConfig& cfg, const SolveOutcome& out, bool redactTiming) {
    BenchRecord r;
    r.graphFile = graphFile;
    r.structure = structureName(classifyStructure(g));
    r.numTasks = g.numTasks();
    r.ccr = formatRatio(ccr(g));
    r.numProcs = cfg.numProcs;
    r.model = modelName(cfg.model);
    r.heuristicProfile = profileName(cfg.profile);
    r.outcome = outcomeName(out.result.outcome);
    r.elapsed = redactTiming ? 0.0 : out.result.stats.elapsed;
    r.statesCreated = out.result.stats.statesCreated;
    r.statesExpanded = out.result.stats.statesExpanded;
    r.duplicatesDiscarded = out.result.stats.duplicatesDiscarded;
    if (out.result.outcome == Outcome::Solved) r.optimalLength = out.result.length;
    return r;
}

namespace {

std::string csvField(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

std::string csvHeader() {
    return "graphFile,structure,numTasks,ccr,numProcs,model,heuristicProfile,outcome,"
           "elapsed,statesCreated,statesExpanded,duplicatesDiscarded,optimalLength";
}

std::string csvLine(const BenchRecord& r) {
    std::ostringstream out;
    out << csvField(r.graphFile) << ',' << csvField(r.structure) << ',' << r.numTasks << ','
        << csvField(r.ccr) << ',' << r.numProcs << ',' << r.model << ','
        << csvField(r.heuristicProfile) << ',' << r.outcome << ',' << std::fixed
        << std::setprecision(6) << r.elapsed << ',' << r.statesCreated << ','
        << r.statesExpanded << ',' << r.duplicatesDiscarded << ',';
    if (r.optimalLength) out << *r.optimalLength;
    return out.str();
}

std::string profileTable(const std::vector<BenchRecord>& records) {
    static const double kThresholds[] = {0.001, 0.01, 0.1, 1.0, 10.0, 120.0};
    struct Row {
        int counts[6] = {0, 0, 0, 0, 0, 0};
        int solved = 0;
        int total = 0;
    };
    std::map<std::string, Row> rows;
    for (const BenchRecord& r : records) {
        Row& row = rows[r.model + "/" + r.heuristicProfile];
        ++row.total;
        if (r.outcome != "solved") continue;
        ++row.solved;
        for (int i = 0; i < 6; ++i)
            if (r.elapsed <= kThresholds[i]) ++row.counts[i];
    }
    std::ostringstream out;
    out << std::left << std::setw(16) << "model";
    for (double t : kThresholds) {
        std::ostringstream h;
        h << "<=" << t << "s";
        out << std::right << std::setw(10) << h.str();
    }
    out << std::right << std::setw(14) << "solved/total" << '\n';
    for (const auto& [key, row] : rows) {
        out << std::left << std::setw(16) << key;
        for (int c : row.counts) out << std::right << std::setw(10) << c;
        std::ostringstream frac;
        frac << row.solved << '/' << row.total;
        out << std::right << std::setw(14) << frac.str() << '\n';
    }
    return out.str();
}

} // namespace sched
