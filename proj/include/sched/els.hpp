#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sched/schedule.hpp"
#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

// Partial schedule: a prefix of tasks placed end-on at their earliest start.
// Kept in normalised processor labelling (see normaliseProcessors).
struct ElsState {
    std::vector<ProcId> proc;   // -1 while unplaced
    std::vector<Time> start;
    std::vector<Time> avail;    // per-processor finish frontier
    Time idle = 0;              // gaps locked in by end-on placement
    int placed = 0;
    Time f = 0;
};

struct ElsConfig {
    int numProcs = 2;
    bool identicalFilter = true;
    bool fixedOrderFilter = true;
};

// Exhaustive list scheduling: branch on every (ready task, processor) pair.
// Distinct decision orders reach the same partial schedule, so duplicate
// detection in the search engine matters here.
class ElsProblem {
public:
    using State = std::shared_ptr<const ElsState>;

    ElsProblem(const TaskGraph& g, ElsConfig cfg);

    State root() const;
    bool isGoal(const State& s) const { return s->placed == g_.numTasks(); }
    std::vector<State> expand(const State& s) const { return expandImpl(*s, cfg_); }
    // Same space without the optional prunes; used to enumerate completions.
    std::vector<State> expandAll(const State& s) const;
    Time f(const State& s) const { return s->f; }
    int depth(const State& s) const { return s->placed; }
    std::optional<std::string> key(const State& s) const { return canonicalKey(*s); }
    Schedule extract(const State& s) const;
    Time goalLength(const State& s) const { return s->f; }

    const TaskGraph& graph() const { return g_; }

    std::vector<TaskId> readySet(const ElsState& s, bool identicalFilter) const;
    void normaliseProcessors(ElsState& s) const;
    std::string canonicalKey(const ElsState& s) const;
    Time boundValue(const ElsState& s) const;

private:
    std::vector<State> expandImpl(const ElsState& s, const ElsConfig& cfg) const;

    const TaskGraph& g_;
    ElsConfig cfg_;
    LevelTable lv_;
    IdenticalGroups groups_;
};

} // namespace sched
