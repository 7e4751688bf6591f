#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "sched/schedule.hpp"
#include "sched/types.hpp"

namespace sched {

enum class Outcome { Solved, Timeout, Memory };

inline const char* outcomeName(Outcome o) {
    switch (o) {
        case Outcome::Solved: return "solved";
        case Outcome::Timeout: return "timeout";
        case Outcome::Memory: return "memory";
    }
    return "?";
}

struct SearchStats {
    uint64_t statesCreated = 0;
    uint64_t statesExpanded = 0;
    uint64_t duplicatesDiscarded = 0;
    uint64_t peakOpenSize = 0;
    double elapsed = 0.0;
    Outcome outcome = Outcome::Solved;
};

inline std::string statsJson(const SearchStats& st) {
    std::ostringstream out;
    out << "{\"statesCreated\":" << st.statesCreated
        << ",\"statesExpanded\":" << st.statesExpanded
        << ",\"duplicatesDiscarded\":" << st.duplicatesDiscarded
        << ",\"peakOpenSize\":" << st.peakOpenSize
        << ",\"elapsed\":" << st.elapsed
        << ",\"outcome\":\"" << outcomeName(st.outcome) << "\"}";
    return out.str();
}

enum class DuplicateMode { Off, Discard, CountOnly };

struct SearchLimits {
    double timeoutSeconds = 120.0;
    uint64_t maxStates = 2'000'000;
};

struct SearchResult {
    Outcome outcome = Outcome::Timeout;
    std::optional<Schedule> schedule;
    Time length = 0;
    SearchStats stats;
};

// Best-first search over a problem's state space. A problem supplies:
//   State root(); bool isGoal(State); std::vector<State> expand(State);
//   Time f(State); int depth(State); Schedule extract(State);
//   std::optional<std::string> key(State)   - canonical id, or nullopt when
//                                             the space is duplicate-free.
// f must never exceed the best completion of a state, and never decrease
// from parent to child; the first goal popped is then optimal.
template <class Problem>
struct SearchOptions {
    SearchLimits limits;
    DuplicateMode duplicates = DuplicateMode::Discard;
    std::optional<Time> upperBound;
    std::optional<Schedule> upperSchedule;
    std::function<void(const typename Problem::State&)> onCreated;
};

template <class Problem>
SearchResult astar(const Problem& prob, const SearchOptions<Problem>& opt) {
    using State = typename Problem::State;
    using Clock = std::chrono::steady_clock;
    const auto startTime = Clock::now();
    auto elapsedSeconds = [&] {
        return std::chrono::duration<double>(Clock::now() - startTime).count();
    };

    struct Entry {
        Time f;
        int depth;
        uint64_t seq;
        State state;
    };
    struct Worse {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.f != b.f) return a.f > b.f;
            if (a.depth != b.depth) return a.depth < b.depth;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, Worse> open;
    std::unordered_set<std::string> knownKeys;
    uint64_t seq = 0;

    SearchResult res;
    auto finish = [&](Outcome outcome) {
        res.outcome = outcome;
        res.stats.outcome = outcome;
        res.stats.elapsed = elapsedSeconds();
        return res;
    };
    auto solvedWithUpper = [&] {
        res.schedule = *opt.upperSchedule;
        res.length = *opt.upperBound;
        return finish(Outcome::Solved);
    };

    State root = prob.root();
    res.stats.statesCreated = 1;
    if (opt.onCreated) opt.onCreated(root);
    if (opt.duplicates != DuplicateMode::Off)
        if (auto k = prob.key(root)) knownKeys.insert(*k);
    open.push({prob.f(root), prob.depth(root), seq++, std::move(root)});
    res.stats.peakOpenSize = 1;

    while (true) {
        if (elapsedSeconds() >= opt.limits.timeoutSeconds) return finish(Outcome::Timeout);
        if (res.stats.statesCreated > opt.limits.maxStates) return finish(Outcome::Memory);
        if (open.empty()) {
            // Everything left was cut by the upper bound, so the bound is tight.
            if (opt.upperSchedule) return solvedWithUpper();
            throw std::logic_error("search space exhausted without a goal");
        }
        Entry top = open.top();
        open.pop();
        if (opt.upperBound && top.f >= *opt.upperBound) return solvedWithUpper();
        if (prob.isGoal(top.state)) {
            res.schedule = prob.extract(top.state);
            res.length = top.f;
            return finish(Outcome::Solved);
        }
        ++res.stats.statesExpanded;
        for (State& child : prob.expand(top.state)) {
            ++res.stats.statesCreated;
            if (opt.onCreated) opt.onCreated(child);
            Time cf = prob.f(child);
            if (opt.upperBound && cf > *opt.upperBound) continue;
            if (opt.duplicates != DuplicateMode::Off) {
                if (auto k = prob.key(child)) {
                    if (!knownKeys.insert(*k).second) {
                        ++res.stats.duplicatesDiscarded;
                        if (opt.duplicates == DuplicateMode::Discard) continue;
                    }
                }
            }
            open.push({cf, prob.depth(child), seq++, std::move(child)});
        }
        res.stats.peakOpenSize = std::max<uint64_t>(res.stats.peakOpenSize, open.size());
    }
}

} // namespace sched
