#include "sched/task_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace sched {

namespace {

const std::pair<StructureTag, const char*> kStructureNames[] = {
    {StructureTag::Independent, "independent"},
    {StructureTag::Fork, "fork"},
    {StructureTag::Join, "join"},
    {StructureTag::ForkJoin, "forkjoin"},
    {StructureTag::OutTree, "outtree"},
    {StructureTag::InTree, "intree"},
    {StructureTag::Pipeline, "pipeline"},
    {StructureTag::Random, "random"},
    {StructureTag::SeriesParallel, "seriesparallel"},
    {StructureTag::Stencil, "stencil"},
};

} // namespace

const char* structureName(StructureTag tag) {
    for (const auto& [t, n] : kStructureNames)
        if (t == tag) return n;
    return "random";
}

std::optional<StructureTag> structureFromName(const std::string& name) {
    for (const auto& [t, n] : kStructureNames)
        if (name == n) return t;
    return std::nullopt;
}

TaskGraph TaskGraph::build(std::string name,
                           std::vector<Time> weights,
                           std::vector<Edge> edges,
                           std::vector<std::string> taskNames) {
    const int n = static_cast<int>(weights.size());
    for (int t = 0; t < n; ++t) {
        if (weights[t] <= 0)
            throw ParseError(ParseError::Kind::NonPositiveWeight,
                             "task " + std::to_string(t) + " has non-positive weight");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw ParseError(ParseError::Kind::UndefinedEndpoint, "edge endpoint out of range");
        if (e.src == e.dst)
            throw ParseError(ParseError::Kind::Cycle, "self edge on task " + std::to_string(e.src));
        if (e.cost < 0)
            throw ParseError(ParseError::Kind::NegativeCost, "negative cost on edge");
        if (i > 0 && edges[i - 1].src == e.src && edges[i - 1].dst == e.dst)
            throw ParseError(ParseError::Kind::DuplicateEdge,
                             "duplicate edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst));
    }

    TaskGraph g;
    g.name_ = std::move(name);
    g.weights_ = std::move(weights);
    g.edges_ = std::move(edges);
    if (taskNames.empty()) {
        taskNames.reserve(n);
        for (int t = 0; t < n; ++t) taskNames.push_back("t" + std::to_string(t));
    }
    g.taskNames_ = std::move(taskNames);

    g.parents_.resize(n);
    g.children_.resize(n);
    for (const Edge& e : g.edges_) {
        g.children_[e.src].emplace_back(e.dst, e.cost);
        g.parents_[e.dst].emplace_back(e.src, e.cost);
    }
    for (int t = 0; t < n; ++t)
        std::sort(g.parents_[t].begin(), g.parents_[t].end());

    // Kahn, lowest id first, so ties follow declaration order.
    std::vector<int> indeg(n, 0);
    for (const Edge& e : g.edges_) ++indeg[e.dst];
    std::set<TaskId> ready;
    for (int t = 0; t < n; ++t)
        if (indeg[t] == 0) ready.insert(t);
    g.topoOrder_.reserve(n);
    while (!ready.empty()) {
        TaskId t = *ready.begin();
        ready.erase(ready.begin());
        g.topoOrder_.push_back(t);
        for (const auto& [c, cost] : g.children_[t]) {
            (void)cost;
            if (--indeg[c] == 0) ready.insert(c);
        }
    }
    if (static_cast<int>(g.topoOrder_.size()) != n)
        throw ParseError(ParseError::Kind::Cycle, "graph contains a cycle");
    g.topoPos_.resize(n);
    for (int k = 0; k < n; ++k) g.topoPos_[g.topoOrder_[k]] = k;

    g.reach_ = BitMatrix(n);
    for (int k = n - 1; k >= 0; --k) {
        TaskId t = g.topoOrder_[k];
        for (const auto& [c, cost] : g.children_[t]) {
            (void)cost;
            g.reach_.set(t, c);
            g.reach_.orRowFrom(t, g.reach_.row(c));
        }
    }
    g.ancestorWeight_.assign(n, 0);
    g.descendantWeight_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.reach_.test(a, b)) {
                g.descendantWeight_[a] += g.weights_[b];
                g.ancestorWeight_[b] += g.weights_[a];
            }
        }
    }
    g.totalWeight_ = 0;
    for (Time w : g.weights_) g.totalWeight_ += w;
    g.totalCost_ = 0;
    for (const Edge& e : g.edges_) g.totalCost_ += e.cost;
    return g;
}

std::optional<Time> TaskGraph::edgeCost(TaskId src, TaskId dst) const {
    for (const auto& [c, cost] : children_[src])
        if (c == dst) return cost;
    return std::nullopt;
}

LevelTable computeLevels(const TaskGraph& g) {
    return allocatedLevels(g, std::vector<int>(g.numTasks(), -1));
}

LevelTable allocatedLevels(const TaskGraph& g, const std::vector<int>& partOf) {
    const int n = g.numTasks();
    LevelTable lv;
    lv.top.assign(n, 0);
    lv.bottom.assign(n, 0);
    auto incurred = [&](TaskId a, TaskId b) {
        return partOf[a] >= 0 && partOf[b] >= 0 && partOf[a] != partOf[b];
    };
    for (TaskId t : g.topoOrder()) {
        Time best = 0;
        for (const auto& [p, cost] : g.parents(t))
            best = std::max(best, lv.top[p] + g.weight(p) + (incurred(p, t) ? cost : 0));
        lv.top[t] = best;
    }
    for (auto it = g.topoOrder().rbegin(); it != g.topoOrder().rend(); ++it) {
        TaskId t = *it;
        Time best = 0;
        for (const auto& [c, cost] : g.children(t))
            best = std::max(best, lv.bottom[c] + (incurred(t, c) ? cost : 0));
        lv.bottom[t] = g.weight(t) + best;
    }
    return lv;
}

IdenticalGroups identicalGroups(const TaskGraph& g) {
    const int n = g.numTasks();
    IdenticalGroups ig;
    ig.groupOf.assign(n, -1);
    ig.chainPrev.assign(n, -1);

    using Signature = std::tuple<Time,
                                 std::vector<std::pair<TaskId, Time>>,
                                 std::vector<std::pair<TaskId, Time>>>;
    std::map<Signature, std::vector<TaskId>> buckets;
    for (TaskId t = 0; t < n; ++t) {
        auto ch = g.children(t);
        std::sort(ch.begin(), ch.end());
        buckets[{g.weight(t), g.parents(t), ch}].push_back(t);
    }
    for (auto& [sig, members] : buckets) {
        (void)sig;
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(),
                  [&](TaskId a, TaskId b) { return g.topoPos(a) < g.topoPos(b); });
        int id = static_cast<int>(ig.groups.size());
        for (size_t i = 0; i < members.size(); ++i) {
            ig.groupOf[members[i]] = id;
            if (i > 0) ig.chainPrev[members[i]] = members[i - 1];
        }
        ig.groups.push_back(members);
    }
    return ig;
}

TaskGraph reverseGraph(const TaskGraph& g) {
    std::vector<Edge> rev;
    rev.reserve(g.edges().size());
    for (const Edge& e : g.edges()) rev.push_back({e.dst, e.src, e.cost});
    std::vector<std::string> names;
    names.reserve(g.numTasks());
    for (TaskId t = 0; t < g.numTasks(); ++t) names.push_back(g.taskName(t));
    return TaskGraph::build(g.name(), g.weights(), std::move(rev), std::move(names));
}

Ratio ccr(const TaskGraph& g) {
    return Ratio(g.totalCost(), g.totalWeight());
}

namespace {

bool isFork(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 2 || g.edges().empty()) return false;
    TaskId s = g.edges().front().src;
    if (static_cast<int>(g.edges().size()) != n - 1) return false;
    for (const Edge& e : g.edges())
        if (e.src != s) return false;
    return true;
}

bool isJoin(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 2 || g.edges().empty()) return false;
    TaskId t = g.edges().front().dst;
    if (static_cast<int>(g.edges().size()) != n - 1) return false;
    for (const Edge& e : g.edges())
        if (e.dst != t) return false;
    return true;
}

bool isForkJoin(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 4) return false;
    if (static_cast<int>(g.edges().size()) != 2 * (n - 2)) return false;
    TaskId source = -1, sink = -1;
    for (TaskId t = 0; t < n; ++t) {
        if (g.parents(t).empty()) {
            if (source >= 0) return false;
            source = t;
        }
        if (g.children(t).empty()) {
            if (sink >= 0) return false;
            sink = t;
        }
    }
    if (source < 0 || sink < 0 || source == sink) return false;
    for (TaskId t = 0; t < n; ++t) {
        if (t == source || t == sink) continue;
        if (g.parents(t).size() != 1 || g.parents(t)[0].first != source) return false;
        if (g.children(t).size() != 1 || g.children(t)[0].first != sink) return false;
    }
    return true;
}

bool isPipeline(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 2 || g.edges().empty()) return false;
    const auto& order = g.topoOrder();
    for (int k = 0; k + 1 < n; ++k)
        if (!g.edgeCost(order[k], order[k + 1])) return false;
    for (const Edge& e : g.edges()) {
        int span = g.topoPos(e.dst) - g.topoPos(e.src);
        if (span != 1 && span != 2) return false;
    }
    return true;
}

bool isOutTree(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 2 || static_cast<int>(g.edges().size()) != n - 1) return false;
    int roots = 0;
    for (TaskId t = 0; t < n; ++t) {
        if (g.parents(t).size() > 1) return false;
        if (g.parents(t).empty()) ++roots;
    }
    return roots == 1;
}

bool isInTree(const TaskGraph& g) {
    const int n = g.numTasks();
    if (n < 2 || static_cast<int>(g.edges().size()) != n - 1) return false;
    int sinks = 0;
    for (TaskId t = 0; t < n; ++t) {
        if (g.children(t).size() > 1) return false;
        if (g.children(t).empty()) ++sinks;
    }
    return sinks == 1;
}

// Layered grid: a task in row r, column c feeds the up-to-three tasks in
// row r+1 with columns c-1, c, c+1, and exactly those. Rows are the
// longest-path depths; columns rank members of a row by id. All rows have
// the width of row 0 (>= 2) except possibly a narrower final row.
bool isStencil(const TaskGraph& g) {
    const int n = g.numTasks();
    if (g.edges().empty()) return false;
    std::vector<int> depth(n, 0);
    for (TaskId t : g.topoOrder())
        for (const auto& [c, cost] : g.children(t)) {
            (void)cost;
            depth[c] = std::max(depth[c], depth[t] + 1);
        }
    int rows = *std::max_element(depth.begin(), depth.end()) + 1;
    if (rows < 2) return false;
    std::vector<std::vector<TaskId>> layer(rows);
    for (TaskId t = 0; t < n; ++t) layer[depth[t]].push_back(t);
    const int m = static_cast<int>(layer[0].size());
    if (m < 2) return false;
    for (int r = 0; r < rows - 1; ++r)
        if (static_cast<int>(layer[r].size()) != m) return false;
    if (static_cast<int>(layer[rows - 1].size()) > m) return false;
    std::vector<int> col(n, 0);
    for (auto& row : layer) {
        std::sort(row.begin(), row.end());
        for (size_t c = 0; c < row.size(); ++c) col[row[c]] = static_cast<int>(c);
    }
    size_t expected = 0;
    for (int r = 0; r + 1 < rows; ++r) {
        int below = static_cast<int>(layer[r + 1].size());
        for (TaskId t : layer[r])
            for (int dc = -1; dc <= 1; ++dc) {
                int c2 = col[t] + dc;
                if (c2 < 0 || c2 >= below) continue;
                ++expected;
                if (!g.edgeCost(t, layer[r + 1][c2])) return false;
            }
    }
    return expected == g.edges().size();
}

// Series-parallel in the order-theoretic sense: the reachability poset
// decomposes recursively into parallel parts (incomparable components) and
// series parts (every element of the prefix below every element of the rest).
bool spDecomposes(const TaskGraph& g, std::vector<TaskId> tasks) {
    if (tasks.size() <= 1) return true;
    std::sort(tasks.begin(), tasks.end(),
              [&](TaskId a, TaskId b) { return g.topoPos(a) < g.topoPos(b); });
    const size_t sz = tasks.size();

    // Parallel split: connected components of the comparability relation.
    std::vector<int> comp(sz, -1);
    int ncomp = 0;
    for (size_t i = 0; i < sz; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            size_t a = stack.back();
            stack.pop_back();
            for (size_t b = 0; b < sz; ++b) {
                if (comp[b] >= 0) continue;
                if (g.reaches(tasks[a], tasks[b]) || g.reaches(tasks[b], tasks[a])) {
                    comp[b] = ncomp;
                    stack.push_back(b);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp > 1) {
        for (int c = 0; c < ncomp; ++c) {
            std::vector<TaskId> part;
            for (size_t i = 0; i < sz; ++i)
                if (comp[i] == c) part.push_back(tasks[i]);
            if (!spDecomposes(g, std::move(part))) return false;
        }
        return true;
    }

    // Series split: a prefix of any linear extension entirely below the rest.
    for (size_t k = 1; k < sz; ++k) {
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i)
            for (size_t j = k; j < sz && ok; ++j)
                if (!g.reaches(tasks[i], tasks[j])) ok = false;
        if (ok) {
            std::vector<TaskId> head(tasks.begin(), tasks.begin() + k);
            std::vector<TaskId> tail(tasks.begin() + k, tasks.end());
            return spDecomposes(g, std::move(head)) && spDecomposes(g, std::move(tail));
        }
    }
    return false;
}

bool isSeriesParallel(const TaskGraph& g) {
    if (g.edges().empty()) return false;
    std::vector<TaskId> all(g.numTasks());
    for (TaskId t = 0; t < g.numTasks(); ++t) all[t] = t;
    return spDecomposes(g, std::move(all));
}

} // namespace

StructureTag classifyStructure(const TaskGraph& g) {
    if (g.edges().empty()) return StructureTag::Independent;
    if (isFork(g)) return StructureTag::Fork;
    if (isJoin(g)) return StructureTag::Join;
    if (isForkJoin(g)) return StructureTag::ForkJoin;
    if (isPipeline(g)) return StructureTag::Pipeline;
    if (isOutTree(g)) return StructureTag::OutTree;
    if (isInTree(g)) return StructureTag::InTree;
    if (isStencil(g)) return StructureTag::Stencil;
    if (isSeriesParallel(g)) return StructureTag::SeriesParallel;
    return StructureTag::Random;
}

namespace {

struct Token {
    enum class Type { Ident, Number, Arrow, LBrace, RBrace, LBracket, RBracket, Equals, Semi, End };
    Type type;
    std::string text;
    int line;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip();
        if (pos_ >= text_.size()) return {Token::Type::End, "", line_};
        char c = text_[pos_];
        int line = line_;
        if (c == '{') { ++pos_; return {Token::Type::LBrace, "{", line}; }
        if (c == '}') { ++pos_; return {Token::Type::RBrace, "}", line}; }
        if (c == '[') { ++pos_; return {Token::Type::LBracket, "[", line}; }
        if (c == ']') { ++pos_; return {Token::Type::RBracket, "]", line}; }
        if (c == '=') { ++pos_; return {Token::Type::Equals, "=", line}; }
        if (c == ';') { ++pos_; return {Token::Type::Semi, ";", line}; }
        if (c == '-') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                pos_ += 2;
                return {Token::Type::Arrow, "->", line};
            }
            if (pos_ + 1 < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                size_t start = pos_++;
                while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                return {Token::Type::Number, text_.substr(start, pos_ - start), line};
            }
            throw ParseError(ParseError::Kind::Syntax,
                             "line " + std::to_string(line) + ": stray '-'");
        }
        if (isIdentChar(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
            std::string word = text_.substr(start, pos_ - start);
            bool numeric = std::all_of(word.begin(), word.end(), [](char ch) {
                return isdigit(static_cast<unsigned char>(ch));
            });
            return {numeric ? Token::Type::Number : Token::Type::Ident, word, line};
        }
        throw ParseError(ParseError::Kind::Syntax,
                         "line " + std::to_string(line) + ": unexpected character '" + c + "'");
    }

private:
    static bool isIdentChar(char c) {
        return isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') { ++line_; ++pos_; continue; }
            if (isspace(static_cast<unsigned char>(c))) { ++pos_; continue; }
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            break;
        }
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
};

} // namespace

TaskGraph parseGraph(const std::string& text) {
    Lexer lex(text);
    auto expect = [&](Token::Type type, const char* what) {
        Token t = lex.next();
        if (t.type != type)
            throw ParseError(ParseError::Kind::Syntax,
                             "line " + std::to_string(t.line) + ": expected " + what +
                                 ", got '" + t.text + "'");
        return t;
    };

    Token kw = lex.next();
    if (kw.type != Token::Type::Ident || kw.text != "digraph")
        throw ParseError(ParseError::Kind::Syntax, "expected 'digraph'");
    Token nameTok = lex.next();
    if (nameTok.type != Token::Type::Ident && nameTok.type != Token::Type::Number)
        throw ParseError(ParseError::Kind::Syntax, "expected graph name");
    expect(Token::Type::LBrace, "'{'");

    std::vector<std::string> names;
    std::vector<Time> weights;
    std::unordered_map<std::string, TaskId> idOf;
    struct RawEdge { std::string src, dst; Time cost; int line; };
    std::vector<RawEdge> rawEdges;

    auto parseAttr = [&](const char* key) -> Time {
        expect(Token::Type::LBracket, "'['");
        Token k = expect(Token::Type::Ident, key);
        if (k.text != key)
            throw ParseError(ParseError::Kind::Syntax,
                             "line " + std::to_string(k.line) + ": expected attribute '" +
                                 key + "'");
        expect(Token::Type::Equals, "'='");
        Token v = expect(Token::Type::Number, "integer");
        expect(Token::Type::RBracket, "']'");
        return std::stoll(v.text);
    };

    while (true) {
        Token t = lex.next();
        if (t.type == Token::Type::RBrace) break;
        if (t.type == Token::Type::End)
            throw ParseError(ParseError::Kind::Syntax, "unexpected end of input, missing '}'");
        if (t.type != Token::Type::Ident && t.type != Token::Type::Number)
            throw ParseError(ParseError::Kind::Syntax,
                             "line " + std::to_string(t.line) + ": expected task or edge");
        Token peek = lex.next();
        if (peek.type == Token::Type::Arrow) {
            Token dst = lex.next();
            if (dst.type != Token::Type::Ident && dst.type != Token::Type::Number)
                throw ParseError(ParseError::Kind::Syntax,
                                 "line " + std::to_string(dst.line) + ": expected edge target");
            Time cost = parseAttr("Weight");
            expect(Token::Type::Semi, "';'");
            rawEdges.push_back({t.text, dst.text, cost, t.line});
        } else if (peek.type == Token::Type::LBracket) {
            Token k = expect(Token::Type::Ident, "Weight");
            if (k.text != "Weight")
                throw ParseError(ParseError::Kind::Syntax,
                                 "line " + std::to_string(k.line) + ": expected attribute 'Weight'");
            expect(Token::Type::Equals, "'='");
            Token v = expect(Token::Type::Number, "integer");
            expect(Token::Type::RBracket, "']'");
            expect(Token::Type::Semi, "';'");
            if (idOf.count(t.text))
                throw ParseError(ParseError::Kind::DuplicateTask,
                                 "line " + std::to_string(t.line) + ": task '" + t.text +
                                     "' declared twice");
            idOf[t.text] = static_cast<TaskId>(names.size());
            names.push_back(t.text);
            weights.push_back(std::stoll(v.text));
        } else {
            throw ParseError(ParseError::Kind::Syntax,
                             "line " + std::to_string(peek.line) + ": expected '->' or '['");
        }
    }

    std::vector<Edge> edges;
    edges.reserve(rawEdges.size());
    for (const RawEdge& e : rawEdges) {
        auto s = idOf.find(e.src);
        auto d = idOf.find(e.dst);
        if (s == idOf.end() || d == idOf.end())
            throw ParseError(ParseError::Kind::UndefinedEndpoint,
                             "line " + std::to_string(e.line) + ": edge references undeclared task '" +
                                 (s == idOf.end() ? e.src : e.dst) + "'");
        edges.push_back({s->second, d->second, e.cost});
    }
    return TaskGraph::build(nameTok.text, std::move(weights), std::move(edges), std::move(names));
}

TaskGraph parseGraphFile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(ParseError::Kind::Syntax, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseGraph(buf.str());
}

std::string serializeGraph(const TaskGraph& g) {
    std::ostringstream out;
    out << "digraph " << g.name() << " {\n";
    for (TaskId t : g.topoOrder())
        out << "  " << g.taskName(t) << " [Weight=" << g.weight(t) << "];\n";
    for (const Edge& e : g.edges())
        out << "  " << g.taskName(e.src) << " -> " << g.taskName(e.dst)
            << " [Weight=" << e.cost << "];\n";
    out << "}\n";
    return out.str();
}

void writeGraphFile(const TaskGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << serializeGraph(g);
}

} // namespace sched
