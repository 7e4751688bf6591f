#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sched/alloc.hpp"
#include "sched/ordering.hpp"
#include "sched/schedule.hpp"
#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

struct AoConfig {
    int numProcs = 2;
    HeuristicProfile profile = HeuristicProfile::Baseline;
    ReadyCondition ready = ReadyCondition::Lookahead;
    SelectScheme select = SelectScheme::InOrder;
    bool identicalFilter = true;
    bool fixedOrderFilter = true;
    bool debugKeys = false; // emit full-state keys so the engine can audit duplicates
};

// Two-phase state: first the partition grows task by task, then, once it is
// complete, processor sequences grow decision by decision. No two distinct
// decision paths meet in the same state, so the engine normally runs with no
// keys at all.
struct AoState {
    AllocSpace::StatePtr alloc;
    OrderSpace::StatePtr order; // null while the partition is still growing
};

class AoProblem {
public:
    using State = AoState;

    AoProblem(const TaskGraph& g, AoConfig cfg);

    State root() const;
    bool isGoal(const State& s) const;
    std::vector<State> expand(const State& s) const;
    // Same space without the optional prunes; used to enumerate completions.
    std::vector<State> expandAll(const State& s) const;
    Time f(const State& s) const { return s.order ? s.order->f : s.alloc->f; }
    int depth(const State& s) const;
    std::optional<std::string> key(const State& s) const;
    Schedule extract(const State& s) const;
    Time goalLength(const State& s) const;

    const TaskGraph& graph() const { return g_; }
    const AllocSpace& allocSpace() const { return allocSpace_; }
    const OrderSpace& orderSpace() const { return orderSpace_; }

private:
    std::vector<State> expandImpl(const State& s, bool filters) const;

    const TaskGraph& g_;
    AoConfig cfg_;
    AllocSpace allocSpace_;
    OrderSpace orderSpace_;
};

} // namespace sched
