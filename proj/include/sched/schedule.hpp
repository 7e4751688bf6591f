#pragma once

#include <string>
#include <vector>

#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

// Complete assignment: every task has a processor and a start time.
struct Schedule {
    int numProcs = 0;
    std::vector<ProcId> proc;
    std::vector<Time> start;

    bool operator==(const Schedule& o) const {
        return numProcs == o.numProcs && proc == o.proc && start == o.start;
    }
};

struct Violation {
    enum class Kind { Precedence, Overlap, BadProcessor, NegativeStart, LengthMismatch };
    Kind kind;
    std::string message;
};

// Constraint violations are reported as data, not errors.
std::vector<Violation> validate(const Schedule& s, const TaskGraph& g);
Time scheduleLength(const Schedule& s, const TaskGraph& g);

// `s` must be valid for reverseGraph(g). Mirrors it into a schedule for g:
// per-processor orders are reversed and every task starts as early as the
// reversed orders and g's precedences allow. Length never grows.
Schedule reverseSchedule(const Schedule& s, const TaskGraph& g);

// Deterministic list scheduling, highest bottom level first (ties: topo
// order), each task placed end-on where it starts earliest (ties: lowest
// processor). Used as the search upper bound.
Schedule heuristicSchedule(const TaskGraph& g, int numProcs);

class ScheduleFileError : public std::runtime_error {
public:
    enum class Kind { Format, Coverage };
    ScheduleFileError(Kind kind, const std::string& msg)
        : std::runtime_error(msg), kind(kind) {}
    Kind kind;
};

struct ScheduleFile {
    Schedule schedule;
    Time declaredLength = 0;
};

// Format: "# procs=<n> length=<L>" then one "<taskId> <proc> <start>" line
// per task, sorted by task id.
std::string serializeSchedule(const Schedule& s, const TaskGraph& g);
void writeScheduleFile(const Schedule& s, const TaskGraph& g, const std::string& path);
ScheduleFile readScheduleFile(const std::string& path, const TaskGraph& g);

} // namespace sched
