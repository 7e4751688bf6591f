#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "sched/task_graph.hpp"
#include "sched/types.hpp"

namespace sched {

struct GenSpec {
    StructureTag structure = StructureTag::Random;
    int numTasks = 8;
    Ratio ccr{0, 1};
    uint64_t seed = 1;
    Time minWeight = 1;
    Time maxWeight = 10;
};

// Uniform draw from [lo, hi] by rejection, so the stream only depends on the
// engine, not on the standard library's distribution implementation.
uint64_t boundedDraw(std::mt19937_64& rng, uint64_t lo, uint64_t hi);

// "0.1" style when the denominator divides a power of ten, "1/3" style text
// is never produced; other denominators fall back to "<num>d<den>".
std::string formatRatio(const Ratio& r);

// Minimum task count that still classifies as the structure.
int minTasksFor(StructureTag structure);

// Deterministic in the spec: same spec, same graph, on any platform. The
// built graph classifies as spec.structure and meets spec.ccr exactly.
// Throws std::invalid_argument when the spec cannot be met (too few tasks,
// a nonzero ccr with no edges, or no classifying graph found).
TaskGraph generateGraph(const GenSpec& spec);

std::string genGraphName(const GenSpec& spec); // identifier-safe
std::string genFileName(const GenSpec& spec);  // <structure>_<n>_<ccr>_<seed>.dot

} // namespace sched
