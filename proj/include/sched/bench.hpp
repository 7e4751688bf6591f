#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sched/ao.hpp"
#include "sched/astar.hpp"
#include "sched/els.hpp"
#include "sched/schedule.hpp"
#include "sched/task_graph.hpp"

namespace sched {

enum class ModelKind { Ao, Els };

const char* modelName(ModelKind m);
std::optional<ModelKind> modelFromName(const std::string& name);

struct SolveConfig {
    ModelKind model = ModelKind::Ao;
    int numProcs = 2;
    HeuristicProfile profile = HeuristicProfile::MftCpl;
    bool identicalFilter = true;
    bool fixedOrderFilter = true;
    bool useUpperBound = true;
    ReadyCondition ready = ReadyCondition::Lookahead;
    SelectScheme select = SelectScheme::InOrder;
    bool reverseJoins = true;
    SearchLimits limits;
};

struct SolveOutcome {
    SearchResult result;
    bool reversed = false; // solved on the mirrored graph, mapped back
};

// One graph through the configured model. Sink-heavy shapes are mirrored
// first when reverseJoins is set; the returned schedule is always for g.
SolveOutcome solveInstance(const TaskGraph& g, const SolveConfig& cfg);

struct BenchRecord {
    std::string graphFile;
    std::string structure;
    int numTasks = 0;
    std::string ccr;
    int numProcs = 0;
    std::string model;
    std::string heuristicProfile;
    std::string outcome;
    double elapsed = 0.0;
    uint64_t statesCreated = 0;
    uint64_t statesExpanded = 0;
    uint64_t duplicatesDiscarded = 0;
    std::optional<Time> optimalLength; // empty unless solved
};

BenchRecord makeRecord(const std::string& graphFile, const TaskGraph& g,
                       const SolveConfig& cfg, const SolveOutcome& out, bool redactTiming);

std::string csvHeader();
std::string csvLine(const BenchRecord& r);

// Cumulative solved counts per model/profile across elapsed-time thresholds.
std::string profileTable(const std::vector<BenchRecord>& records);

} // namespace sched
