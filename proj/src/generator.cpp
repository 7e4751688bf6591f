#include "sched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sched {

uint64_t boundedDraw(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
    uint64_t range = hi - lo + 1;
    if (range == 0) return rng(); // [lo, hi] covers the whole word
    uint64_t reject = (0 - range) % range; // 2^64 mod range
    uint64_t x;
    do {
        x = rng();
    } while (x < reject);
    return lo + x % range;
}

std::string formatRatio(const Ratio& r) {
    if (r.den == 1) return std::to_string(r.num);
    long long d = r.den;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d == 1) {
        long long k10 = 1;
        while (k10 % r.den != 0) k10 *= 10;
        long long scaled = r.num * (k10 / r.den);
        std::string whole = std::to_string(scaled / k10);
        std::string frac = std::to_string(k10 + scaled % k10).substr(1);
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        return whole + "." + frac;
    }
    return std::to_string(r.num) + "d" + std::to_string(r.den);
}

int minTasksFor(StructureTag structure) {
    switch (structure) {
        case StructureTag::Independent: return 2;
        case StructureTag::Fork: return 3;
        case StructureTag::Join: return 3;
        case StructureTag::ForkJoin: return 4;
        case StructureTag::OutTree: return 4;
        case StructureTag::InTree: return 4;
        case StructureTag::Pipeline: return 3;
        case StructureTag::Random: return 4;
        case StructureTag::SeriesParallel: return 5;
        case StructureTag::Stencil: return 4;
    }
    return 2;
}

namespace {

int drawInt(std::mt19937_64& rng, int lo, int hi) {
    return static_cast<int>(boundedDraw(rng, lo, hi));
}

struct SpPart {
    std::vector<TaskId> sources, sinks;
};

SpPart spBuild(int lo, int cnt, std::vector<Edge>& edges, std::mt19937_64& rng) {
    if (cnt == 1) return {{lo}, {lo}};
    int split = drawInt(rng, 1, cnt - 1);
    bool series = boundedDraw(rng, 0, 1) == 0;
    SpPart a = spBuild(lo, split, edges, rng);
    SpPart b = spBuild(lo + split, cnt - split, edges, rng);
    if (series) {
        for (TaskId s : a.sinks)
            for (TaskId t : b.sources) edges.push_back({s, t, 0});
        return {a.sources, b.sinks};
    }
    SpPart merged;
    merged.sources = a.sources;
    merged.sources.insert(merged.sources.end(), b.sources.begin(), b.sources.end());
    merged.sinks = a.sinks;
    merged.sinks.insert(merged.sinks.end(), b.sinks.begin(), b.sinks.end());
    return merged;
}

std::vector<Edge> buildEdges(const GenSpec& spec, std::mt19937_64& rng) {
    const int n = spec.numTasks;
    std::vector<Edge> edges;
    switch (spec.structure) {
        case StructureTag::Independent:
            break;
        case StructureTag::Fork:
            for (TaskId t = 1; t < n; ++t) edges.push_back({0, t, 0});
            break;
        case StructureTag::Join:
            for (TaskId t = 0; t + 1 < n; ++t) edges.push_back({t, n - 1, 0});
            break;
        case StructureTag::ForkJoin:
            for (TaskId m = 1; m + 1 < n; ++m) {
                edges.push_back({0, m, 0});
                edges.push_back({m, n - 1, 0});
            }
            break;
        case StructureTag::OutTree: {
            // First branches forced so the tree is neither a fork nor a chain.
            std::vector<TaskId> parent(n, -1);
            parent[1] = 0;
            parent[2] = 0;
            parent[3] = 1;
            for (TaskId t = 4; t < n; ++t) parent[t] = drawInt(rng, 0, t - 1);
            for (TaskId t = 1; t < n; ++t) edges.push_back({parent[t], t, 0});
            break;
        }
        case StructureTag::InTree: {
            std::vector<TaskId> parent(n, -1);
            parent[1] = 0;
            parent[2] = 0;
            parent[3] = 1;
            for (TaskId t = 4; t < n; ++t) parent[t] = drawInt(rng, 0, t - 1);
            for (TaskId t = 1; t < n; ++t)
                edges.push_back({static_cast<TaskId>(n - 1 - t),
                                 static_cast<TaskId>(n - 1 - parent[t]), 0});
            break;
        }
        case StructureTag::Pipeline:
            for (TaskId t = 0; t + 1 < n; ++t) edges.push_back({t, t + 1, 0});
            for (TaskId t = 0; t + 2 < n; ++t)
                if (boundedDraw(rng, 0, 1) == 0) edges.push_back({t, t + 2, 0});
            break;
        case StructureTag::SeriesParallel:
            spBuild(0, n, edges, rng);
            break;
        case StructureTag::Stencil: {
            int m = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
            while ((m + 1) * (m + 1) <= n) ++m;
            int lastRow = (n - 1) / m;
            for (TaskId t = 0; t < n; ++t) {
                int row = t / m, col = t % m;
                if (row == lastRow) continue;
                for (int c2 = col - 1; c2 <= col + 1; ++c2) {
                    if (c2 < 0 || c2 >= m) continue;
                    TaskId u = (row + 1) * m + c2;
                    if (u < n) edges.push_back({t, u, 0});
                }
            }
            break;
        }
        case StructureTag::Random: {
            int numLayers = drawInt(rng, 2, std::max(2, n / 2));
            std::vector<int> layerOf(n);
            int pos = 0, remaining = n;
            for (int l = 0; l < numLayers; ++l) {
                int left = numLayers - 1 - l;
                int size = l + 1 == numLayers ? remaining : drawInt(rng, 1, remaining - left);
                for (int i = 0; i < size; ++i) layerOf[pos++] = l;
                remaining -= size;
            }
            for (TaskId u = 0; u < n; ++u)
                for (TaskId v = u + 1; v < n; ++v)
                    if (layerOf[u] < layerOf[v] && boundedDraw(rng, 0, 9) < 3)
                        edges.push_back({u, v, 0});
            break;
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.src != b.src ? a.src < b.src : a.dst < b.dst; });
    return edges;
}

} // namespace

TaskGraph generateGraph(const GenSpec& spec) {
    if (spec.numTasks < minTasksFor(spec.structure))
        throw std::invalid_argument("generateGraph: too few tasks for the structure");
    if (spec.ccr.num < 0) throw std::invalid_argument("generateGraph: negative ccr");
    if (spec.structure == StructureTag::Independent && spec.ccr.num > 0)
        throw std::invalid_argument("generateGraph: independent tasks cannot carry communication");
    if (spec.minWeight < 1 || spec.maxWeight < spec.minWeight)
        throw std::invalid_argument("generateGraph: bad weight range");

    const int n = spec.numTasks;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(spec.seed + 0x9e3779b97f4a7c15ULL * attempt);
        std::vector<Edge> edges = buildEdges(spec, rng);
        std::vector<Time> weights(n);
        for (Time& w : weights)
            w = static_cast<Time>(boundedDraw(rng, spec.minWeight, spec.maxWeight));

        // Exact ccr needs the total weight divisible by the denominator; top
        // up weights, preferring tasks still under the cap.
        Time sumW = std::accumulate(weights.begin(), weights.end(), Time{0});
        long long den = spec.ccr.den;
        long long deficit = (den - sumW % den) % den;
        if (deficit > 0) {
            uint64_t startIdx = boundedDraw(rng, 0, n - 1);
            for (long long i = 0; i < deficit; ++i) {
                int chosen = -1;
                for (int k = 0; k < n; ++k) {
                    int idx = static_cast<int>((startIdx + i + k) % n);
                    if (weights[idx] < spec.maxWeight) { chosen = idx; break; }
                }
                if (chosen < 0) chosen = static_cast<int>((startIdx + i) % n);
                ++weights[chosen];
            }
            sumW += deficit;
        }

        long long sumC = sumW / den * spec.ccr.num;
        if (sumC > 0) {
            size_t numEdges = edges.size();
            if (numEdges == 0) continue; // rolled an edgeless graph, try again
            Time base = sumC / static_cast<long long>(numEdges);
            long long rem = sumC % static_cast<long long>(numEdges);
            for (Edge& e : edges) e.cost = base;
            std::vector<size_t> idx(numEdges);
            std::iota(idx.begin(), idx.end(), size_t{0});
            for (long long i = 0; i < rem; ++i) {
                size_t j = boundedDraw(rng, i, numEdges - 1);
                std::swap(idx[i], idx[j]);
                edges[idx[i]].cost += 1;
            }
        }

        TaskGraph g = TaskGraph::build(genGraphName(spec), weights, edges);
        if (classifyStructure(g) == spec.structure && ccr(g) == spec.ccr) return g;
    }
    throw std::invalid_argument("generateGraph: no graph of the requested structure found");
}

std::string genGraphName(const GenSpec& spec) {
    std::string ratio = formatRatio(spec.ccr);
    for (char& c : ratio)
        if (c == '.') c = '_';
    return std::string(structureName(spec.structure)) + "_" + std::to_string(spec.numTasks) +
           "_" + ratio + "_" + std::to_string(spec.seed);
}

std::string genFileName(const GenSpec& spec) {
    return std::string(structureName(spec.structure)) + "_" + std::to_string(spec.numTasks) +
           "_" + formatRatio(spec.ccr) + "_" + std::to_string(spec.seed) + ".dot";
}

} // namespace sched
