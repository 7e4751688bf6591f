#include "sched/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sched {

std::vector<Violation> validate(const Schedule& s, const TaskGraph& g) {
    std::vector<Violation> out;
    const int n = g.numTasks();
    for (TaskId t = 0; t < n; ++t) {
        if (s.proc[t] < 0 || s.proc[t] >= s.numProcs)
            out.push_back({Violation::Kind::BadProcessor,
                           "task " + g.taskName(t) + " on processor " + std::to_string(s.proc[t])});
        if (s.start[t] < 0)
            out.push_back({Violation::Kind::NegativeStart,
                           "task " + g.taskName(t) + " starts at " + std::to_string(s.start[t])});
    }
    for (const Edge& e : g.edges()) {
        Time needed = s.start[e.src] + g.weight(e.src) + (s.proc[e.src] != s.proc[e.dst] ? e.cost : 0);
        if (s.start[e.dst] < needed)
            out.push_back({Violation::Kind::Precedence,
                           "task " + g.taskName(e.dst) + " starts at " + std::to_string(s.start[e.dst]) +
                               " but data from " + g.taskName(e.src) + " arrives at " +
                               std::to_string(needed)});
    }
    std::vector<std::vector<TaskId>> byProc(std::max(s.numProcs, 0));
    for (TaskId t = 0; t < n; ++t)
        if (s.proc[t] >= 0 && s.proc[t] < s.numProcs) byProc[s.proc[t]].push_back(t);
    for (auto& tasks : byProc) {
        std::sort(tasks.begin(), tasks.end(), [&](TaskId a, TaskId b) {
            return s.start[a] != s.start[b] ? s.start[a] < s.start[b] : a < b;
        });
        for (size_t i = 1; i < tasks.size(); ++i) {
            TaskId prev = tasks[i - 1], cur = tasks[i];
            if (s.start[cur] < s.start[prev] + g.weight(prev))
                out.push_back({Violation::Kind::Overlap,
                               "tasks " + g.taskName(prev) + " and " + g.taskName(cur) +
                                   " overlap on processor " + std::to_string(s.proc[cur])});
        }
    }
    return out;
}

Time scheduleLength(const Schedule& s, const TaskGraph& g) {
    Time len = 0;
    for (TaskId t = 0; t < g.numTasks(); ++t)
        len = std::max(len, s.start[t] + g.weight(t));
    return len;
}

Schedule reverseSchedule(const Schedule& s, const TaskGraph& g) {
    TaskGraph rg = reverseGraph(g);
    if (!validate(s, rg).empty())
        throw std::invalid_argument("schedule is not valid for the reversed graph");

    const int n = g.numTasks();
    std::vector<std::vector<TaskId>> seq(s.numProcs);
    for (TaskId t = 0; t < n; ++t) seq[s.proc[t]].push_back(t);
    for (auto& tasks : seq) {
        std::sort(tasks.begin(), tasks.end(), [&](TaskId a, TaskId b) {
            return s.start[a] != s.start[b] ? s.start[a] < s.start[b] : a < b;
        });
        std::reverse(tasks.begin(), tasks.end());
    }

    // Earliest starts subject to g's precedences and the fixed per-processor
    // orders. The combined constraint graph is acyclic because the reversed
    // orders are consistent with g.
    std::vector<TaskId> prevOn(n, -1), nextOn(n, -1);
    std::vector<int> pending(n, 0);
    for (const auto& tasks : seq)
        for (size_t i = 1; i < tasks.size(); ++i) {
            prevOn[tasks[i]] = tasks[i - 1];
            nextOn[tasks[i - 1]] = tasks[i];
            ++pending[tasks[i]];
        }
    for (TaskId t = 0; t < n; ++t) pending[t] += static_cast<int>(g.parents(t).size());

    Schedule out;
    out.numProcs = s.numProcs;
    out.proc = s.proc;
    out.start.assign(n, 0);
    std::vector<TaskId> ready;
    for (TaskId t = 0; t < n; ++t)
        if (pending[t] == 0) ready.push_back(t);
    int done = 0;
    while (!ready.empty()) {
        TaskId t = ready.back();
        ready.pop_back();
        Time est = 0;
        if (prevOn[t] >= 0) est = out.start[prevOn[t]] + g.weight(prevOn[t]);
        for (const auto& [p, cost] : g.parents(t))
            est = std::max(est, out.start[p] + g.weight(p) + (out.proc[p] != out.proc[t] ? cost : 0));
        out.start[t] = est;
        ++done;
        for (const auto& [c, cost] : g.children(t)) {
            (void)cost;
            if (--pending[c] == 0) ready.push_back(c);
        }
        if (nextOn[t] >= 0 && --pending[nextOn[t]] == 0) ready.push_back(nextOn[t]);
    }
    if (done != n)
        throw std::logic_error("reversed ordering constraints form a cycle");
    return out;
}

Schedule heuristicSchedule(const TaskGraph& g, int numProcs) {
    const int n = g.numTasks();
    LevelTable lv = computeLevels(g);
    Schedule s;
    s.numProcs = numProcs;
    s.proc.assign(n, 0);
    s.start.assign(n, 0);

    std::vector<int> pending(n, 0);
    for (TaskId t = 0; t < n; ++t) pending[t] = static_cast<int>(g.parents(t).size());
    std::vector<bool> placed(n, false);
    std::vector<Time> avail(numProcs, 0);

    for (int step = 0; step < n; ++step) {
        TaskId pick = -1;
        for (TaskId t = 0; t < n; ++t) {
            if (placed[t] || pending[t] > 0) continue;
            if (pick < 0 || lv.bottom[t] > lv.bottom[pick] ||
                (lv.bottom[t] == lv.bottom[pick] && g.topoPos(t) < g.topoPos(pick)))
                pick = t;
        }
        ProcId bestProc = 0;
        Time bestStart = kInfiniteTime;
        for (ProcId p = 0; p < numProcs; ++p) {
            Time est = avail[p];
            for (const auto& [par, cost] : g.parents(pick))
                est = std::max(est, s.start[par] + g.weight(par) + (s.proc[par] != p ? cost : 0));
            if (est < bestStart) {
                bestStart = est;
                bestProc = p;
            }
        }
        s.proc[pick] = bestProc;
        s.start[pick] = bestStart;
        avail[bestProc] = bestStart + g.weight(pick);
        placed[pick] = true;
        for (const auto& [c, cost] : g.children(pick)) {
            (void)cost;
            --pending[c];
        }
    }
    return s;
}

std::string serializeSchedule(const Schedule& s, const TaskGraph& g) {
    std::ostringstream out;
    out << "# procs=" << s.numProcs << " length=" << scheduleLength(s, g) << "\n";
    for (TaskId t = 0; t < g.numTasks(); ++t)
        out << t << " " << s.proc[t] << " " << s.start[t] << "\n";
    return out.str();
}

void writeScheduleFile(const Schedule& s, const TaskGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << serializeSchedule(s, g);
}

ScheduleFile readScheduleFile(const std::string& path, const TaskGraph& g) {
    std::ifstream in(path);
    if (!in)
        throw ScheduleFileError(ScheduleFileError::Kind::Format, "cannot open " + path);
    std::string header;
    if (!std::getline(in, header))
        throw ScheduleFileError(ScheduleFileError::Kind::Format, "empty schedule file");
    int procs = 0;
    long long declared = 0;
    if (sscanf(header.c_str(), "# procs=%d length=%lld", &procs, &declared) != 2)
        throw ScheduleFileError(ScheduleFileError::Kind::Format,
                                "bad header line: " + header);
    if (procs <= 0)
        throw ScheduleFileError(ScheduleFileError::Kind::Format, "processor count must be positive");

    ScheduleFile out;
    out.schedule.numProcs = procs;
    out.declaredLength = declared;
    out.schedule.proc.assign(g.numTasks(), -1);
    out.schedule.start.assign(g.numTasks(), 0);
    std::vector<bool> seen(g.numTasks(), false);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long task, proc, start;
        if (!(ls >> task >> proc >> start))
            throw ScheduleFileError(ScheduleFileError::Kind::Format, "bad line: " + line);
        std::string rest;
        if (ls >> rest)
            throw ScheduleFileError(ScheduleFileError::Kind::Format, "trailing tokens: " + line);
        if (task < 0 || task >= g.numTasks())
            throw ScheduleFileError(ScheduleFileError::Kind::Coverage,
                                    "unknown task id " + std::to_string(task));
        if (seen[task])
            throw ScheduleFileError(ScheduleFileError::Kind::Coverage,
                                    "task " + std::to_string(task) + " listed twice");
        seen[task] = true;
        out.schedule.proc[task] = static_cast<ProcId>(proc);
        out.schedule.start[task] = start;
    }
    for (TaskId t = 0; t < g.numTasks(); ++t)
        if (!seen[t])
            throw ScheduleFileError(ScheduleFileError::Kind::Coverage,
                                    "task " + std::to_string(t) + " missing");
    return out;
}

} // namespace sched
