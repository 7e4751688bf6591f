#include "sched/alloc.hpp"

#include <algorithm>

namespace sched {

const char* profileName(HeuristicProfile p) {
    switch (p) {
        case HeuristicProfile::Baseline: return "baseline";
        case HeuristicProfile::Mft: return "mft";
        case HeuristicProfile::Cpl: return "cpl";
        case HeuristicProfile::MftCpl: return "mft+cpl";
    }
    return "?";
}

std::optional<HeuristicProfile> profileFromName(const std::string& name) {
    if (name == "baseline") return HeuristicProfile::Baseline;
    if (name == "mft") return HeuristicProfile::Mft;
    if (name == "cpl") return HeuristicProfile::Cpl;
    if (name == "mft+cpl") return HeuristicProfile::MftCpl;
    return std::nullopt;
}

namespace {

struct PartStats {
    Time minTop = kInfiniteTime;
    Time sumW = 0;
    Time minTail = kInfiniteTime; // blal - w
};

std::vector<PartStats> partStats(const TaskGraph& g, const std::vector<int>& partOf,
                                 const LevelTable& lv) {
    int numParts = 0;
    for (int p : partOf) numParts = std::max(numParts, p + 1);
    std::vector<PartStats> stats(numParts);
    for (TaskId t = 0; t < g.numTasks(); ++t) {
        int p = partOf[t];
        if (p < 0) continue;
        stats[p].minTop = std::min(stats[p].minTop, lv.top[t]);
        stats[p].sumW += g.weight(t);
        stats[p].minTail = std::min(stats[p].minTail, lv.bottom[t] - g.weight(t));
    }
    return stats;
}

} // namespace

Time loadBound(const TaskGraph& g, const std::vector<int>& partOf, const LevelTable& lv) {
    Time best = 0;
    for (const PartStats& ps : partStats(g, partOf, lv))
        if (ps.sumW > 0) best = std::max(best, ps.minTop + ps.sumW + ps.minTail);
    return best;
}

Time allocatedCriticalPath(const std::vector<int>& partOf, const LevelTable& lv) {
    Time best = 0;
    for (size_t t = 0; t < partOf.size(); ++t)
        if (partOf[t] >= 0) best = std::max(best, lv.top[t] + lv.bottom[t]);
    return best;
}

Time minFinishTime(std::vector<std::pair<Time, Time>> releaseWeight) {
    std::stable_sort(releaseWeight.begin(), releaseWeight.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Time finish = 0;
    for (const auto& [release, w] : releaseWeight)
        finish = std::max(finish, release) + w;
    return finish;
}

Time minStartSpan(std::vector<std::pair<Time, Time>> tailWeight) {
    return minFinishTime(std::move(tailWeight));
}

Time loadBoundMft(const TaskGraph& g, const std::vector<int>& partOf, const LevelTable& lv) {
    int numParts = 0;
    for (int p : partOf) numParts = std::max(numParts, p + 1);
    std::vector<std::vector<std::pair<Time, Time>>> releases(numParts), tails(numParts);
    std::vector<PartStats> stats = partStats(g, partOf, lv);
    for (TaskId t : g.topoOrder()) {
        int p = partOf[t];
        if (p < 0) continue;
        releases[p].emplace_back(lv.top[t], g.weight(t));
        tails[p].emplace_back(lv.bottom[t] - g.weight(t), g.weight(t));
    }
    Time best = 0;
    for (int p = 0; p < numParts; ++p) {
        if (releases[p].empty()) continue;
        Time head = minFinishTime(releases[p]) + stats[p].minTail;
        Time tail = stats[p].minTop + minStartSpan(tails[p]);
        best = std::max(best, std::max(head, tail));
    }
    return best;
}

LoadLevels computeLoadLevels(const TaskGraph& g, int numProcs) {
    LoadLevels out;
    const int n = g.numTasks();
    out.tload.resize(n);
    out.bload.resize(n);
    for (TaskId t = 0; t < n; ++t) {
        out.tload[t] = (g.ancestorWeight(t) + numProcs - 1) / numProcs;
        out.bload[t] = g.weight(t) + (g.descendantWeight(t) + numProcs - 1) / numProcs;
    }
    return out;
}

Time criticalPathLoadBound(const std::vector<int>& partOf, const LevelTable& lv,
                           const LoadLevels& loads) {
    Time best = 0;
    for (size_t t = 0; t < partOf.size(); ++t)
        if (partOf[t] >= 0)
            best = std::max(best, std::max(lv.top[t], loads.tload[t]) +
                                      std::max(lv.bottom[t], loads.bload[t]));
    return best;
}

boost::multiprecision::cpp_int countAllocations(int numTasks, int numProcs) {
    using boost::multiprecision::cpp_int;
    if (numTasks == 0) return 1; // the empty allocation
    // Stirling numbers of the second kind, S(i, k).
    std::vector<std::vector<cpp_int>> S(numTasks + 1, std::vector<cpp_int>(numTasks + 1, 0));
    S[0][0] = 1;
    for (int i = 1; i <= numTasks; ++i)
        for (int k = 1; k <= i; ++k)
            S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
    cpp_int total = 0;
    for (int k = 1; k <= std::min(numTasks, numProcs); ++k) total += S[numTasks][k];
    return total;
}

int identicalAllocMinPart(const AllocState& s, const IdenticalGroups& groups, TaskId t) {
    int gid = groups.groupOf[t];
    if (gid < 0) return 0;
    int lowest = 0;
    for (TaskId m : groups.groups[gid])
        if (s.partOf[m] >= 0) lowest = std::max(lowest, s.partOf[m]);
    return lowest;
}

AllocSpace::AllocSpace(const TaskGraph& g, int numProcs, HeuristicProfile profile)
    : g_(g),
      numProcs_(numProcs),
      profile_(profile),
      staticLevels_(computeLevels(g)),
      loads_(computeLoadLevels(g, numProcs)),
      groups_(identicalGroups(g)) {
    Time cp = 0;
    for (TaskId t = 0; t < g.numTasks(); ++t)
        cp = std::max(cp, staticLevels_.top[t] + staticLevels_.bottom[t]);
    Time spread = g.numTasks() > 0 ? (g.totalWeight() + numProcs - 1) / numProcs : 0;
    staticBound_ = std::max(cp, spread);
}

AllocSpace::StatePtr AllocSpace::root() const {
    auto s = std::make_shared<AllocState>();
    s->partOf.assign(g_.numTasks(), -1);
    s->tlal = staticLevels_.top;
    s->blal = staticLevels_.bottom;
    s->f = staticBound_;
    return s;
}

AllocSpace::StatePtr AllocSpace::makeChild(const AllocState& s, TaskId t, int part) const {
    auto child = std::make_shared<AllocState>(s);
    child->partOf[t] = part;
    child->numParts = std::max(s.numParts, part + 1);
    child->nextPos = s.nextPos + 1;

    // All parents are allocated (topo order), so t's own top level is final
    // here; edges out of t stay cost-free until their heads are allocated.
    Time top = 0;
    for (const auto& [p, cost] : g_.parents(t))
        top = std::max(top, child->tlal[p] + g_.weight(p) + (child->partOf[p] != part ? cost : 0));
    if (top > child->tlal[t]) child->tlal[t] = top;

    // Forward: a higher top level at t can only lift descendants, and every
    // edge on such a path has an unallocated head, contributing no cost.
    std::vector<TaskId> work{t};
    while (!work.empty()) {
        TaskId u = work.back();
        work.pop_back();
        for (const auto& [c, cost] : g_.children(u)) {
            (void)cost;
            Time cand = child->tlal[u] + g_.weight(u);
            if (cand > child->tlal[c]) {
                child->tlal[c] = cand;
                work.push_back(c);
            }
        }
    }

    // Backward: edges into t from other parts just became cut; bottom levels
    // of ancestors may rise.
    for (const auto& [p, cost] : g_.parents(t)) {
        if (child->partOf[p] == part) continue;
        Time cand = g_.weight(p) + cost + child->blal[t];
        if (cand > child->blal[p]) {
            child->blal[p] = cand;
            work.push_back(p);
        }
    }
    while (!work.empty()) {
        TaskId u = work.back();
        work.pop_back();
        for (const auto& [p, cost] : g_.parents(u)) {
            bool cut = child->partOf[p] >= 0 && child->partOf[p] != child->partOf[u];
            Time cand = g_.weight(p) + (cut ? cost : 0) + child->blal[u];
            if (cand > child->blal[p]) {
                child->blal[p] = cand;
                work.push_back(p);
            }
        }
    }

    child->f = std::max(s.f, boundValue(*child));
    return child;
}

std::vector<AllocSpace::StatePtr> AllocSpace::children(const AllocState& s,
                                                       bool identicalFilter) const {
    std::vector<StatePtr> out;
    if (complete(s)) return out;
    TaskId t = g_.topoOrder()[s.nextPos];
    int first = identicalFilter ? identicalAllocMinPart(s, groups_, t) : 0;
    for (int part = first; part < s.numParts; ++part)
        out.push_back(makeChild(s, t, part));
    if (s.numParts < numProcs_) out.push_back(makeChild(s, t, s.numParts));
    return out;
}

Time AllocSpace::boundValue(const AllocState& s) const {
    LevelTable lv;
    lv.top = s.tlal;
    lv.bottom = s.blal;
    bool mft = profile_ == HeuristicProfile::Mft || profile_ == HeuristicProfile::MftCpl;
    bool cpl = profile_ == HeuristicProfile::Cpl || profile_ == HeuristicProfile::MftCpl;
    Time load = mft ? loadBoundMft(g_, s.partOf, lv) : loadBound(g_, s.partOf, lv);
    Time path = cpl ? criticalPathLoadBound(s.partOf, lv, loads_)
                    : allocatedCriticalPath(s.partOf, lv);
    return std::max(load, path);
}

} // namespace sched
