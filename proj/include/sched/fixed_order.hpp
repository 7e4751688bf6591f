#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sched/task_graph.hpp"

namespace sched {

// A free-task list can be scheduled in one forced order when every task has
// at most one parent and at most one child, all parents that exist are the
// same single task, all children that exist are the same single task, and
// sorting by non-decreasing incoming edge cost also leaves outgoing edge
// costs non-increasing. The common parent makes in-cost order coincide with
// data-ready order; a task without a child counts as strictly cheapest on
// the outgoing side, since delaying it delays nothing else, so childless
// tasks must trail every task that still feeds someone. Ties break by
// incoming cost, then by higher outgoing cost, then topo position, which
// keeps the result deterministic.
inline std::optional<std::vector<TaskId>> fixedOrderSequence(const TaskGraph& g,
                                                             const std::vector<TaskId>& tasks) {
    if (tasks.size() < 2) return std::nullopt;
    TaskId commonParent = -1;
    TaskId commonChild = -1;
    struct Item { TaskId task; Time in, out; bool feeds; int pos; };
    std::vector<Item> items;
    items.reserve(tasks.size());
    for (TaskId t : tasks) {
        if (g.parents(t).size() > 1 || g.children(t).size() > 1) return std::nullopt;
        Time in = 0;
        if (!g.parents(t).empty()) {
            TaskId p = g.parents(t)[0].first;
            if (commonParent < 0) commonParent = p;
            else if (commonParent != p) return std::nullopt;
            in = g.parents(t)[0].second;
        }
        Time out = 0;
        bool feeds = !g.children(t).empty();
        if (feeds) {
            TaskId c = g.children(t)[0].first;
            if (commonChild < 0) commonChild = c;
            else if (commonChild != c) return std::nullopt;
            out = g.children(t)[0].second;
        }
        items.push_back({t, in, out, feeds, g.topoPos(t)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.in != b.in) return a.in < b.in;
        if (a.feeds != b.feeds) return a.feeds;
        if (a.out != b.out) return a.out > b.out;
        return a.pos < b.pos;
    });
    std::vector<TaskId> order;
    order.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            const Item& prev = items[i - 1];
            const Item& cur = items[i];
            if (!prev.feeds && cur.feeds) return std::nullopt;
            if (prev.feeds && cur.feeds && prev.out < cur.out) return std::nullopt;
        }
        order.push_back(items[i].task);
    }
    return order;
}

} // namespace sched
