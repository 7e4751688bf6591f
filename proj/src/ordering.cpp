#include "sched/ordering.hpp"

#include <algorithm>

#include "sched/fixed_order.hpp"

namespace sched {

const char* readyName(ReadyCondition r) {
    return r == ReadyCondition::Lookahead ? "lookahead" : "simple";
}

std::optional<ReadyCondition> readyFromName(const std::string& name) {
    if (name == "lookahead") return ReadyCondition::Lookahead;
    if (name == "simple") return ReadyCondition::Simple;
    return std::nullopt;
}

const char* selectName(SelectScheme s) {
    return s == SelectScheme::InOrder ? "in-order" : "round-robin";
}

std::optional<SelectScheme> selectFromName(const std::string& name) {
    if (name == "in-order") return SelectScheme::InOrder;
    if (name == "round-robin") return SelectScheme::RoundRobin;
    return std::nullopt;
}

OrderSpace::OrderSpace(const TaskGraph& g, OrderConfig cfg)
    : g_(g),
      cfg_(cfg),
      groups_(identicalGroups(g)),
      cap_(g.totalWeight() + g.totalCost() + 1) {}

OrderSpace::StatePtr OrderSpace::start(std::shared_ptr<const AllocDone> alloc,
                                       Time parentF) const {
    auto s = std::make_shared<OrderState>();
    s->seq.resize(alloc->numParts);
    s->nextInSeq.assign(g_.numTasks(), -1);
    s->est = alloc->tlal;
    s->ordered.assign(g_.numTasks(), 0);
    if (cfg_.ready == ReadyCondition::Lookahead) s->closure = g_.reachability();
    s->alloc = std::move(alloc);
    s->f = std::max(parentF, boundValue(*s));
    return s;
}

int OrderSpace::selectProcessor(const OrderState& s) const {
    const AllocDone& al = *s.alloc;
    std::vector<int> live;
    for (int p = 0; p < al.numParts; ++p)
        if (s.seq[p].size() < al.partTasks[p].size()) live.push_back(p);
    if (live.empty()) return -1;
    if (cfg_.select == SelectScheme::RoundRobin)
        return live[s.orderPos % static_cast<int>(live.size())];
    return live.front();
}

std::vector<TaskId> OrderSpace::freeTasks(const OrderState& s, int p, bool filters) const {
    const AllocDone& al = *s.alloc;
    std::vector<TaskId> out;
    for (TaskId t : al.partTasks[p]) {
        if (s.ordered[t]) continue;
        bool free = true;
        if (cfg_.ready == ReadyCondition::Lookahead) {
            for (TaskId v : al.partTasks[p]) {
                if (v == t || s.ordered[v]) continue;
                if (s.closure.test(v, t)) { free = false; break; }
            }
        } else {
            for (const auto& [par, cost] : g_.parents(t)) {
                (void)cost;
                if (al.partOf[par] == p && !s.ordered[par]) { free = false; break; }
            }
        }
        if (!free) continue;
        if (filters && cfg_.identicalFilter) {
            TaskId q = groups_.chainPrev[t];
            if (q >= 0 && al.partOf[q] == p && !s.ordered[q]) continue;
        }
        out.push_back(t);
    }
    return out;
}

OrderSpace::StatePtr OrderSpace::orderTask(const OrderState& s, int p, TaskId t) const {
    auto c = std::make_shared<OrderState>(s);
    const AllocDone& al = *c->alloc;
    TaskId prev = c->seq[p].empty() ? -1 : c->seq[p].back();
    c->seq[p].push_back(t);
    if (prev >= 0) c->nextInSeq[prev] = t;
    c->ordered[t] = 1;
    ++c->orderPos;

    Time eest = 0;
    for (const auto& [par, cost] : g_.parents(t))
        eest = std::max(eest, c->est[par] + g_.weight(par) + (al.partOf[par] != p ? cost : 0));
    if (prev >= 0) eest = std::max(eest, c->est[prev] + g_.weight(prev));
    c->est[t] = std::max(c->est[t], eest);

    if (cfg_.ready == ReadyCondition::Lookahead) {
        // Everything still unordered on p now runs after t; fold those edges
        // into the closure. No new target can reach t (that would have made
        // t unfree), so target rows are stable and one pass suffices.
        for (TaskId u : al.partTasks[p]) {
            if (c->ordered[u] || c->closure.test(t, u)) continue;
            const uint64_t* urow = s.closure.row(u);
            for (TaskId r = 0; r < g_.numTasks(); ++r) {
                if (r != t && !c->closure.test(r, t)) continue;
                c->closure.set(r, u);
                c->closure.orRowFrom(r, urow);
            }
        }
    }

    propagate(*c, {t});
    c->f = c->invalid ? kInfiniteTime : std::max(s.f, boundValue(*c));
    return c;
}

// Restores est consistency after the seeds moved: every edge holds
// est[head] >= est[tail] + w(tail) (+ cost when the edge is cut), and each
// sequence runs back to back or later. A start past cap_ can only come from
// going around a cycle, so the state is marked invalid instead of looping.
void OrderSpace::propagate(OrderState& s, std::vector<TaskId> work) const {
    const AllocDone& al = *s.alloc;
    while (!work.empty()) {
        TaskId u = work.back();
        work.pop_back();
        Time finish = s.est[u] + g_.weight(u);
        if (finish > cap_) {
            s.invalid = true;
            return;
        }
        for (const auto& [child, cost] : g_.children(u)) {
            Time cand = finish + (al.partOf[child] != al.partOf[u] ? cost : 0);
            if (cand > s.est[child]) {
                s.est[child] = cand;
                work.push_back(child);
            }
        }
        TaskId nxt = s.nextInSeq[u];
        if (nxt >= 0 && finish > s.est[nxt]) {
            s.est[nxt] = finish;
            work.push_back(nxt);
        }
    }
}

std::vector<OrderSpace::StatePtr> OrderSpace::children(const OrderState& s,
                                                       bool filters) const {
    std::vector<StatePtr> out;
    if (s.invalid || complete(s)) return out;
    int p = selectProcessor(s);
    std::vector<TaskId> cands = freeTasks(s, p, filters);
    if (filters && cfg_.fixedOrderFilter && cands.size() > 1)
        if (auto forced = fixedOrderSequence(g_, cands)) cands = {forced->front()};
    out.reserve(cands.size());
    for (TaskId t : cands) out.push_back(orderTask(s, p, t));
    return out;
}

Time OrderSpace::scheduleCriticalPath(const OrderState& s) const {
    Time best = 0;
    for (TaskId t = 0; t < g_.numTasks(); ++t)
        if (s.ordered[t]) best = std::max(best, s.est[t] + s.alloc->blal[t]);
    return best;
}

Time OrderSpace::orderedLoadBound(const OrderState& s) const {
    const AllocDone& al = *s.alloc;
    Time best = 0;
    for (int p = 0; p < al.numParts; ++p) {
        Time finish = 0;
        if (!s.seq[p].empty()) {
            TaskId last = s.seq[p].back();
            finish = s.est[last] + g_.weight(last);
        }
        Time rest = 0;
        for (TaskId t : al.partTasks[p])
            if (!s.ordered[t]) rest += g_.weight(t);
        best = std::max(best, finish + rest);
    }
    return best;
}

Time OrderSpace::boundValue(const OrderState& s) const {
    return std::max(scheduleCriticalPath(s), orderedLoadBound(s));
}

Schedule OrderSpace::extract(const OrderState& s) const {
    Schedule out;
    out.numProcs = cfg_.numProcs;
    out.proc.resize(g_.numTasks());
    out.start.resize(g_.numTasks());
    for (TaskId t = 0; t < g_.numTasks(); ++t) {
        out.proc[t] = s.alloc->partOf[t];
        out.start[t] = s.est[t];
    }
    return out;
}

Time OrderSpace::goalLength(const OrderState& s) const {
    Time len = 0;
    for (TaskId t = 0; t < g_.numTasks(); ++t)
        len = std::max(len, s.est[t] + g_.weight(t));
    return len;
}

} // namespace sched
