#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sched/bit_matrix.hpp"
#include "sched/types.hpp"

namespace sched {

struct Edge {
    TaskId src = 0;
    TaskId dst = 0;
    Time cost = 0;
    bool operator==(const Edge& o) const {
        return src == o.src && dst == o.dst && cost == o.cost;
    }
};

enum class StructureTag {
    Independent,
    Fork,
    Join,
    ForkJoin,
    OutTree,
    InTree,
    Pipeline,
    Random,
    SeriesParallel,
    Stencil,
};

const char* structureName(StructureTag tag);
std::optional<StructureTag> structureFromName(const std::string& name);

class ParseError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,
        Cycle,
        NonPositiveWeight,
        NegativeCost,
        DuplicateEdge,
        DuplicateTask,
        UndefinedEndpoint,
    };

    ParseError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind(kind) {}

    Kind kind;
};

// Immutable weighted DAG. Task ids are dense 0..n-1 in declaration order;
// the topological order breaks ties by lowest id.
class TaskGraph {
public:
    // Validates: positive weights, non-negative costs, defined endpoints,
    // no duplicate edges, acyclic. Throws ParseError otherwise.
    static TaskGraph build(std::string name,
                           std::vector<Time> weights,
                           std::vector<Edge> edges,
                           std::vector<std::string> taskNames = {});

    int numTasks() const { return static_cast<int>(weights_.size()); }
    Time weight(TaskId t) const { return weights_[t]; }
    const std::vector<Time>& weights() const { return weights_; }
    Time totalWeight() const { return totalWeight_; }
    Time totalCost() const { return totalCost_; }

    // Sorted by (src, dst).
    const std::vector<Edge>& edges() const { return edges_; }
    // (neighbor, edge cost), sorted by neighbor id.
    const std::vector<std::pair<TaskId, Time>>& parents(TaskId t) const { return parents_[t]; }
    const std::vector<std::pair<TaskId, Time>>& children(TaskId t) const { return children_[t]; }
    std::optional<Time> edgeCost(TaskId src, TaskId dst) const;

    const std::vector<TaskId>& topoOrder() const { return topoOrder_; }
    int topoPos(TaskId t) const { return topoPos_[t]; }

    const std::string& name() const { return name_; }
    const std::string& taskName(TaskId t) const { return taskNames_[t]; }

    // reachability().test(a, b) iff a is a proper ancestor of b.
    const BitMatrix& reachability() const { return reach_; }
    bool reaches(TaskId a, TaskId b) const { return reach_.test(a, b); }
    Time ancestorWeight(TaskId t) const { return ancestorWeight_[t]; }
    Time descendantWeight(TaskId t) const { return descendantWeight_[t]; }

private:
    std::string name_;
    std::vector<Time> weights_;
    std::vector<Edge> edges_;
    std::vector<std::string> taskNames_;
    std::vector<std::vector<std::pair<TaskId, Time>>> parents_;
    std::vector<std::vector<std::pair<TaskId, Time>>> children_;
    std::vector<TaskId> topoOrder_;
    std::vector<int> topoPos_;
    BitMatrix reach_;
    std::vector<Time> ancestorWeight_;
    std::vector<Time> descendantWeight_;
    Time totalWeight_ = 0;
    Time totalCost_ = 0;
};

// Top level excludes the task's own weight; bottom level includes it.
// Neither counts communication unless computed against an allocation.
struct LevelTable {
    std::vector<Time> top;
    std::vector<Time> bottom;
};

// partOf[t] = part index, or -1 while unallocated. An edge contributes its
// cost only when both endpoints are allocated to different parts.
LevelTable computeLevels(const TaskGraph& g);
LevelTable allocatedLevels(const TaskGraph& g, const std::vector<int>& partOf);

// Maximal groups of interchangeable tasks: equal weight, equal parent and
// child sets with equal per-edge costs. Members are listed in topo order;
// chainPrev[t] is the preceding member of t's group, or -1.
struct IdenticalGroups {
    std::vector<int> groupOf;
    std::vector<TaskId> chainPrev;
    std::vector<std::vector<TaskId>> groups;
};

IdenticalGroups identicalGroups(const TaskGraph& g);

TaskGraph reverseGraph(const TaskGraph& g);
StructureTag classifyStructure(const TaskGraph& g);
Ratio ccr(const TaskGraph& g);

TaskGraph parseGraph(const std::string& text);
TaskGraph parseGraphFile(const std::string& path);
std::string serializeGraph(const TaskGraph& g);
void writeGraphFile(const TaskGraph& g, const std::string& path);

} // namespace sched
