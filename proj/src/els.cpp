#include "sched/els.hpp"

#include <algorithm>
#include <unordered_set>

#include "sched/fixed_order.hpp"

namespace sched {

ElsProblem::ElsProblem(const TaskGraph& g, ElsConfig cfg)
    : g_(g), cfg_(cfg), lv_(computeLevels(g)), groups_(identicalGroups(g)) {}

ElsProblem::State ElsProblem::root() const {
    auto s = std::make_shared<ElsState>();
    s->proc.assign(g_.numTasks(), -1);
    s->start.assign(g_.numTasks(), 0);
    s->avail.assign(cfg_.numProcs, 0);
    s->f = boundValue(*s);
    return s;
}

std::vector<TaskId> ElsProblem::readySet(const ElsState& s, bool identicalFilter) const {
    std::vector<TaskId> ready;
    for (TaskId t : g_.topoOrder()) {
        if (s.proc[t] >= 0) continue;
        bool ok = true;
        for (const auto& [p, cost] : g_.parents(t)) {
            (void)cost;
            if (s.proc[p] < 0) { ok = false; break; }
        }
        // Interchangeable tasks enter in a fixed chain order.
        if (ok && identicalFilter && groups_.chainPrev[t] >= 0 && s.proc[groups_.chainPrev[t]] < 0)
            ok = false;
        if (ok) ready.push_back(t);
    }
    return ready;
}

void ElsProblem::normaliseProcessors(ElsState& s) const {
    const int P = cfg_.numProcs;
    // Sort processors by the topo position of their earliest-ranked task;
    // empty processors go last. Lowest tasks are distinct, so the order is total.
    std::vector<int> lowest(P, g_.numTasks());
    for (TaskId t = 0; t < g_.numTasks(); ++t)
        if (s.proc[t] >= 0) lowest[s.proc[t]] = std::min(lowest[s.proc[t]], g_.topoPos(t));
    std::vector<ProcId> order(P);
    for (ProcId p = 0; p < P; ++p) order[p] = p;
    std::stable_sort(order.begin(), order.end(),
                     [&](ProcId a, ProcId b) { return lowest[a] < lowest[b]; });
    std::vector<ProcId> rename(P);
    for (ProcId newId = 0; newId < P; ++newId) rename[order[newId]] = newId;
    for (TaskId t = 0; t < g_.numTasks(); ++t)
        if (s.proc[t] >= 0) s.proc[t] = rename[s.proc[t]];
    std::vector<Time> avail(P, 0);
    for (ProcId p = 0; p < P; ++p) avail[rename[p]] = s.avail[p];
    s.avail = std::move(avail);
}

std::string ElsProblem::canonicalKey(const ElsState& s) const {
    std::string key;
    key.reserve(static_cast<size_t>(g_.numTasks()) * 4);
    for (TaskId t = 0; t < g_.numTasks(); ++t) {
        if (s.proc[t] < 0) {
            key += '.';
        } else {
            key += static_cast<char>('A' + s.proc[t]);
            key += std::to_string(s.start[t]);
        }
        key += ';';
    }
    return key;
}

Time ElsProblem::boundValue(const ElsState& s) const {
    const int n = g_.numTasks();
    Time placedPath = 0;
    for (TaskId t = 0; t < n; ++t)
        if (s.proc[t] >= 0) placedPath = std::max(placedPath, s.start[t] + lv_.bottom[t]);

    // Work plus idle already locked in, spread over all processors.
    Time load = (g_.totalWeight() + s.idle + cfg_.numProcs - 1) / cfg_.numProcs;

    // Earliest conceivable start for each unplaced task: communication-free
    // relaxation through placed parents, floored by the emptiest processor.
    Time minAvail = *std::min_element(s.avail.begin(), s.avail.end());
    Time unplacedPath = 0;
    std::vector<Time> est(n, 0);
    for (TaskId t : g_.topoOrder()) {
        if (s.proc[t] >= 0) {
            est[t] = s.start[t];
            continue;
        }
        Time e = minAvail;
        for (const auto& [p, cost] : g_.parents(t)) {
            (void)cost;
            e = std::max(e, est[p] + g_.weight(p));
        }
        est[t] = e;
        unplacedPath = std::max(unplacedPath, e + lv_.bottom[t]);
    }
    return std::max({placedPath, load, unplacedPath});
}

std::vector<ElsProblem::State> ElsProblem::expandImpl(const ElsState& s, const ElsConfig& cfg) const {
    std::vector<TaskId> ready = readySet(s, cfg.identicalFilter);
    if (cfg.fixedOrderFilter) {
        if (auto forced = fixedOrderSequence(g_, ready))
            ready.assign(1, forced->front());
    }
    std::vector<State> children;
    std::unordered_set<std::string> seen;
    for (TaskId t : ready) {
        for (ProcId p = 0; p < cfg.numProcs; ++p) {
            auto child = std::make_shared<ElsState>(s);
            Time est = child->avail[p];
            for (const auto& [par, cost] : g_.parents(t))
                est = std::max(est, child->start[par] + g_.weight(par) +
                                        (child->proc[par] != p ? cost : 0));
            child->idle += est - child->avail[p];
            child->proc[t] = p;
            child->start[t] = est;
            child->avail[p] = est + g_.weight(t);
            child->placed = s.placed + 1;
            normaliseProcessors(*child);
            if (!seen.insert(canonicalKey(*child)).second) continue;
            child->f = std::max(s.f, boundValue(*child));
            children.push_back(std::move(child));
        }
    }
    return children;
}

std::vector<ElsProblem::State> ElsProblem::expandAll(const State& s) const {
    ElsConfig open = cfg_;
    open.identicalFilter = false;
    open.fixedOrderFilter = false;
    return expandImpl(*s, open);
}

Schedule ElsProblem::extract(const State& s) const {
    Schedule out;
    out.numProcs = cfg_.numProcs;
    out.proc = s->proc;
    out.start = s->start;
    return out;
}

} // namespace sched
