#include "sched/oracle.hpp"

#include <stdexcept>

namespace sched {

void forEachPartition(const TaskGraph& g, int numProcs,
                      const std::function<void(const std::vector<int>&, int)>& cb) {
    const int n = g.numTasks();
    std::vector<int> partOf(n, -1);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == n) {
            cb(partOf, used);
            return;
        }
        TaskId t = g.topoOrder()[pos];
        int limit = std::min(used + 1, numProcs);
        for (int p = 0; p < limit; ++p) {
            partOf[t] = p;
            self(self, pos + 1, std::max(used, p + 1));
        }
        partOf[t] = -1;
    };
    rec(rec, 0, 0);
}

namespace {

// Tight packing of fixed per-part sequences. Returns false on a precedence /
// sequence cycle.
bool packSequences(const TaskGraph& g, const std::vector<int>& partOf,
                   const std::vector<std::vector<TaskId>>& seqs, std::vector<Time>& est) {
    const int n = g.numTasks();
    std::vector<TaskId> seqPrev(n, -1);
    std::vector<int> pending(n, 0);
    for (const auto& sq : seqs)
        for (size_t i = 1; i < sq.size(); ++i) seqPrev[sq[i]] = sq[i - 1];
    for (TaskId t = 0; t < n; ++t) {
        pending[t] = static_cast<int>(g.parents(t).size()) + (seqPrev[t] >= 0 ? 1 : 0);
    }
    std::vector<TaskId> ready;
    for (TaskId t = 0; t < n; ++t)
        if (pending[t] == 0) ready.push_back(t);
    est.assign(n, 0);
    std::vector<TaskId> nextInSeq(n, -1);
    for (TaskId t = 0; t < n; ++t)
        if (seqPrev[t] >= 0) nextInSeq[seqPrev[t]] = t;
    int done = 0;
    while (!ready.empty()) {
        TaskId t = ready.back();
        ready.pop_back();
        ++done;
        Time start = 0;
        for (const auto& [par, cost] : g.parents(t))
            start = std::max(start,
                             est[par] + g.weight(par) + (partOf[par] != partOf[t] ? cost : 0));
        if (seqPrev[t] >= 0)
            start = std::max(start, est[seqPrev[t]] + g.weight(seqPrev[t]));
        est[t] = start;
        for (const auto& [c, cost] : g.children(t)) {
            (void)cost;
            if (--pending[c] == 0) ready.push_back(c);
        }
        if (nextInSeq[t] >= 0 && --pending[nextInSeq[t]] == 0) ready.push_back(nextInSeq[t]);
    }
    return done == n;
}

} // namespace

void forEachSequencedSchedule(const TaskGraph& g, const std::vector<int>& partOf,
                              int numProcs,
                              const std::function<void(const Schedule&, Time)>& cb) {
    const int n = g.numTasks();
    int numParts = 0;
    for (int p : partOf) numParts = std::max(numParts, p + 1);
    std::vector<std::vector<TaskId>> seqs(numParts);
    for (TaskId t = 0; t < n; ++t) seqs[partOf[t]].push_back(t); // id order, sorted
    std::vector<Time> est;

    auto visit = [&] {
        // A sequence that puts a task before one of its same-part ancestors
        // can never pack; skip without the full check.
        for (const auto& sq : seqs)
            for (size_t i = 0; i + 1 < sq.size(); ++i)
                for (size_t j = i + 1; j < sq.size(); ++j)
                    if (g.reaches(sq[j], sq[i])) return;
        if (!packSequences(g, partOf, seqs, est)) return;
        Schedule s;
        s.numProcs = numProcs;
        s.proc.assign(partOf.begin(), partOf.end());
        s.start = est;
        Time len = 0;
        for (TaskId t = 0; t < n; ++t) len = std::max(len, est[t] + g.weight(t));
        cb(s, len);
    };

    // Odometer over per-part permutations.
    while (true) {
        visit();
        int p = 0;
        while (p < numParts && !std::next_permutation(seqs[p].begin(), seqs[p].end())) ++p;
        if (p == numParts) break;
    }
}

BruteForceResult bruteForceOptimal(const TaskGraph& g, int numProcs, int maxTasks) {
    if (g.numTasks() > maxTasks)
        throw std::invalid_argument("bruteForceOptimal: graph too large for exhaustive search");
    BruteForceResult res;
    forEachPartition(g, numProcs, [&](const std::vector<int>& partOf, int) {
        ++res.allocationCount;
        forEachSequencedSchedule(g, partOf, numProcs, [&](const Schedule& s, Time len) {
            ++res.scheduleCount;
            if (len < res.optimalLength) {
                res.optimalLength = len;
                res.schedule = s;
            }
        });
    });
    return res;
}

} // namespace sched
