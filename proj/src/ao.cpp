#include "sched/ao.hpp"

#include <sstream>

namespace sched {

AoProblem::AoProblem(const TaskGraph& g, AoConfig cfg)
    : g_(g),
      cfg_(cfg),
      allocSpace_(g, cfg.numProcs, cfg.profile),
      orderSpace_(g, OrderConfig{cfg.numProcs, cfg.ready, cfg.select,
                                 cfg.identicalFilter, cfg.fixedOrderFilter}) {}

AoProblem::State AoProblem::root() const { return {allocSpace_.root(), nullptr}; }

bool AoProblem::isGoal(const State& s) const {
    return s.order && orderSpace_.complete(*s.order) && !s.order->invalid;
}

std::vector<AoProblem::State> AoProblem::expandImpl(const State& s, bool filters) const {
    std::vector<State> out;
    if (!s.order) {
        if (!allocSpace_.complete(*s.alloc)) {
            for (auto& c : allocSpace_.children(*s.alloc, filters && cfg_.identicalFilter))
                out.push_back({std::move(c), nullptr});
        } else {
            auto done = std::make_shared<AllocDone>();
            done->partOf = s.alloc->partOf;
            done->numParts = s.alloc->numParts;
            done->tlal = s.alloc->tlal;
            done->blal = s.alloc->blal;
            done->partTasks.resize(s.alloc->numParts);
            for (TaskId t : g_.topoOrder()) done->partTasks[s.alloc->partOf[t]].push_back(t);
            out.push_back({s.alloc, orderSpace_.start(std::move(done), s.alloc->f)});
        }
    } else {
        for (auto& c : orderSpace_.children(*s.order, filters))
            out.push_back({s.alloc, std::move(c)});
    }
    return out;
}

std::vector<AoProblem::State> AoProblem::expand(const State& s) const {
    return expandImpl(s, true);
}

std::vector<AoProblem::State> AoProblem::expandAll(const State& s) const {
    return expandImpl(s, false);
}

int AoProblem::depth(const State& s) const {
    if (!s.order) return s.alloc->nextPos;
    return g_.numTasks() + 1 + s.order->orderPos;
}

std::optional<std::string> AoProblem::key(const State& s) const {
    if (!cfg_.debugKeys) return std::nullopt;
    std::ostringstream os;
    os << (s.order ? "O:" : "A:");
    for (int p : s.alloc->partOf) os << p << ',';
    if (s.order)
        for (const auto& sq : s.order->seq) {
            os << '|';
            for (TaskId t : sq) os << t << ',';
        }
    return os.str();
}

Schedule AoProblem::extract(const State& s) const { return orderSpace_.extract(*s.order); }

Time AoProblem::goalLength(const State& s) const { return orderSpace_.goalLength(*s.order); }

} // namespace sched
