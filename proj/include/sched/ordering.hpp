#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sched/bit_matrix.hpp"
#include "sched/schedule.hpp"
#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

// When an unordered task may be appended to its processor's sequence.
// Lookahead tracks a transitive closure of precedence plus the constraints
// implied by ordering decisions, and admits a task only when nothing still
// unordered on the same processor has to run before it; the search space then
// contains no deadline cycles at all. Simple only checks direct parents and
// relies on cycle detection in the start-time propagation instead.
enum class ReadyCondition { Lookahead, Simple };

// Which processor's sequence is extended next. Any rule that is a function
// of the state alone keeps the space duplicate-free.
enum class SelectScheme { InOrder, RoundRobin };

const char* readyName(ReadyCondition r);
std::optional<ReadyCondition> readyFromName(const std::string& name);
const char* selectName(SelectScheme s);
std::optional<SelectScheme> selectFromName(const std::string& name);

// A finished allocation, frozen and shared by every ordering state under it.
// Parts map to processors by index.
struct AllocDone {
    std::vector<int> partOf;
    int numParts = 0;
    std::vector<Time> tlal;
    std::vector<Time> blal;
    std::vector<std::vector<TaskId>> partTasks; // per part, topo order
};

struct OrderState {
    std::shared_ptr<const AllocDone> alloc;
    std::vector<std::vector<TaskId>> seq; // per part, ordered prefix
    std::vector<TaskId> nextInSeq;        // successor within the sequence, -1 none
    std::vector<Time> est;   // ordered: start so far; unordered: lower bound
    std::vector<char> ordered;
    BitMatrix closure;       // lookahead only; empty matrix otherwise
    int orderPos = 0;
    Time f = 0;
    bool invalid = false;    // start-time propagation found a cycle
};

struct OrderConfig {
    int numProcs = 2;
    ReadyCondition ready = ReadyCondition::Lookahead;
    SelectScheme select = SelectScheme::InOrder;
    bool identicalFilter = true;
    bool fixedOrderFilter = true;
};

class OrderSpace {
public:
    using StatePtr = std::shared_ptr<const OrderState>;

    OrderSpace(const TaskGraph& g, OrderConfig cfg);

    StatePtr start(std::shared_ptr<const AllocDone> alloc, Time parentF) const;
    bool complete(const OrderState& s) const { return s.orderPos == g_.numTasks(); }

    // Part whose sequence grows next; -1 when complete.
    int selectProcessor(const OrderState& s) const;
    // Tasks appendable to part p under the ready condition. filters applies
    // the interchangeable-task restriction.
    std::vector<TaskId> freeTasks(const OrderState& s, int p, bool filters) const;

    std::vector<StatePtr> children(const OrderState& s, bool filters) const;
    StatePtr orderTask(const OrderState& s, int p, TaskId t) const;

    // Longest started path: start + remaining allocated level, ordered tasks.
    Time scheduleCriticalPath(const OrderState& s) const;
    // Sequence finish plus work still to run on the same part.
    Time orderedLoadBound(const OrderState& s) const;
    Time boundValue(const OrderState& s) const;

    Schedule extract(const OrderState& s) const; // complete states only
    Time goalLength(const OrderState& s) const;

    const TaskGraph& graph() const { return g_; }
    const OrderConfig& config() const { return cfg_; }

private:
    void propagate(OrderState& s, std::vector<TaskId> work) const;

    const TaskGraph& g_;
    OrderConfig cfg_;
    IdenticalGroups groups_;
    Time cap_; // any start beyond this proves a precedence cycle
};

} // namespace sched
