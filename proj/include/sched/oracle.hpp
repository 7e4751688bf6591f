#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sched/schedule.hpp"
#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

// Every partition of the tasks into at most numProcs unlabelled parts.
// Tasks join parts in topo order, and parts are numbered by first member,
// so each partition is visited exactly once in its canonical numbering.
void forEachPartition(const TaskGraph& g, int numProcs,
                      const std::function<void(const std::vector<int>&, int)>& cb);

// Every feasible way to sequence each part, packed tight: task starts are
// the longest-path times under precedence, cross-part communication, and
// the chosen sequences. Infeasible sequencings (a cycle between precedence
// and sequence order) are skipped.
void forEachSequencedSchedule(const TaskGraph& g, const std::vector<int>& partOf,
                              int numProcs,
                              const std::function<void(const Schedule&, Time)>& cb);

struct BruteForceResult {
    Time optimalLength = kInfiniteTime;
    Schedule schedule;
    uint64_t scheduleCount = 0;   // feasible sequencings over all partitions
    uint64_t allocationCount = 0; // partitions visited
};

// Exhaustive reference optimum, independent of the search models. Refuses
// graphs above maxTasks; the enumeration is factorial.
BruteForceResult bruteForceOptimal(const TaskGraph& g, int numProcs, int maxTasks = 8);

// Shortest completion reachable from a state, enumerated through the
// problem's unpruned expansion. Infinite when no goal is reachable.
template <class Problem>
Time minCompletionLength(const Problem& prob, const typename Problem::State& s) {
    if (prob.isGoal(s)) return prob.goalLength(s);
    Time best = kInfiniteTime;
    for (const auto& c : prob.expandAll(s))
        best = std::min(best, minCompletionLength(prob, c));
    return best;
}

} // namespace sched
