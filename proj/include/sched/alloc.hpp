#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <vector>

#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

enum class HeuristicProfile { Baseline, Mft, Cpl, MftCpl };

const char* profileName(HeuristicProfile p);
std::optional<HeuristicProfile> profileFromName(const std::string& name);

// Partial partition of the tasks, grown in topo order. Parts are numbered in
// creation order, which is what keeps the space free of processor-permutation
// duplicates. Allocated levels are maintained incrementally as edges become
// internal or cut.
struct AllocState {
    std::vector<int> partOf;    // -1 while unallocated
    std::vector<Time> tlal;     // allocated top levels, all tasks
    std::vector<Time> blal;     // allocated bottom levels, all tasks
    int numParts = 0;
    int nextPos = 0;            // next topo position to allocate
    Time f = 0;
};

// Work distribution floor per part: earliest entry + total work + shortest exit.
Time loadBound(const TaskGraph& g, const std::vector<int>& partOf, const LevelTable& lv);
// Longest allocated-level path through any allocated task.
Time allocatedCriticalPath(const std::vector<int>& partOf, const LevelTable& lv);

// Minimal finish time of one processor's tasks over all orders: sweep tasks
// by non-decreasing release (ties keep the given order), each starting when
// both released and the predecessor finished. (release, weight) pairs.
Time minFinishTime(std::vector<std::pair<Time, Time>> releaseWeight);
// Minimal span from the first start to the schedule tail; the same sweep run
// on the reverse-time view, with blal - w playing the release role.
Time minStartSpan(std::vector<std::pair<Time, Time>> tailWeight);

// loadBound with both ends sharpened by the forced-idle sweeps.
Time loadBoundMft(const TaskGraph& g, const std::vector<int>& partOf, const LevelTable& lv);

// Work-spreading floors on levels: every ancestor must run somewhere before
// n starts, every descendant after it finishes. Exact ceilings.
struct LoadLevels {
    std::vector<Time> tload;
    std::vector<Time> bload;
};
LoadLevels computeLoadLevels(const TaskGraph& g, int numProcs);

// allocatedCriticalPath with each level floored by its load counterpart.
Time criticalPathLoadBound(const std::vector<int>& partOf, const LevelTable& lv,
                           const LoadLevels& loads);

// Number of reachable complete allocations: partitions of the tasks into at
// most numProcs unlabelled parts.
boost::multiprecision::cpp_int countAllocations(int numTasks, int numProcs);

// Lowest part index an interchangeable task may still join: at or above the
// highest part already holding a member of its group.
int identicalAllocMinPart(const AllocState& s, const IdenticalGroups& groups, TaskId t);

class AllocSpace {
public:
    using StatePtr = std::shared_ptr<const AllocState>;

    AllocSpace(const TaskGraph& g, int numProcs, HeuristicProfile profile);

    StatePtr root() const;
    bool complete(const AllocState& s) const { return s.nextPos == g_.numTasks(); }
    std::vector<StatePtr> children(const AllocState& s, bool identicalFilter) const;

    // Profile-selected bound over the current partial partition (no
    // parent-max smoothing; children apply it themselves).
    Time boundValue(const AllocState& s) const;

    const TaskGraph& graph() const { return g_; }
    int numProcs() const { return numProcs_; }
    const LoadLevels& loadLevels() const { return loads_; }

private:
    StatePtr makeChild(const AllocState& s, TaskId t, int part) const;

    const TaskGraph& g_;
    int numProcs_;
    HeuristicProfile profile_;
    LevelTable staticLevels_;
    LoadLevels loads_;
    IdenticalGroups groups_;
    Time staticBound_ = 0;
};

} // namespace sched
