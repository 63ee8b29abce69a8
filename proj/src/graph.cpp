#include "loopcond/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <cctype>
#include <set>
#include <sstream>

#include "loopcond/detail/search.hpp"
#include "loopcond/error.hpp"

namespace loopcond {

DiGraph::DiGraph(int n, std::vector<Edge> edges, std::vector<std::string> labels) :
    _n(n),
    _edges(std::move(edges)),
    _labels(std::move(labels)),
    _adjacency(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
    _out(n),
    _in(n)
{
    if (n < 0)
        throw InvalidArgument("negative vertex count");
    if (!_labels.empty() && static_cast<int>(_labels.size()) != n)
        throw InvalidArgument("label count does not match vertex count");
    for (auto [a, b] : _edges)
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");

    std::sort(_edges.begin(), _edges.end());
    _edges.erase(std::unique(_edges.begin(), _edges.end()), _edges.end());
    for (auto [a, b] : _edges) {
        _adjacency[static_cast<std::size_t>(a) * n + b] = 1;
        _out[a].push_back(b);
        _in[b].push_back(a);
    }
    for (auto & in : _in)
        std::sort(in.begin(), in.end());
}

auto DiGraph::has_edge(int from, int to) const -> bool
{
    if (from < 0 || from >= _n || to < 0 || to >= _n)
        return false;
    return _adjacency[static_cast<std::size_t>(from) * _n + to];
}

auto DiGraph::label(int v) const -> std::string
{
    return _labels.empty() ? std::to_string(v) : _labels[v];
}

auto is_homomorphism(const DiGraph & source, const DiGraph & target, const std::vector<int> & map) -> bool
{
    if (static_cast<int>(map.size()) != source.size())
        return false;
    for (int m : map)
        if (m < 0 || m >= target.size())
            return false;
    return std::all_of(source.edges().begin(), source.edges().end(),
        [&](const auto & e) { return target.has_edge(map[e.first], map[e.second]); });
}

auto has_loop(const DiGraph & g) -> bool
{
    return std::any_of(g.edges().begin(), g.edges().end(), [](const auto & e) { return e.first == e.second; });
}

auto symmetric_part(const DiGraph & g) -> DiGraph
{
    std::vector<DiGraph::Edge> edges;
    for (auto [a, b] : g.edges())
        if (g.has_edge(b, a))
            edges.emplace_back(a, b);
    return DiGraph(g.size(), std::move(edges), g.labels());
}

auto is_symmetric(const DiGraph & g) -> bool
{
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const auto & e) { return g.has_edge(e.second, e.first); });
}

namespace {

void require_symmetric(const DiGraph & g, const char * what)
{
    if (!is_symmetric(g))
        throw NotSymmetric(std::string(what) + " requires a symmetric graph");
}

auto bfs_distances(const DiGraph & g, int root) -> std::vector<int>
{
    std::vector<int> dist(g.size(), -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.out_neighbours(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

} // namespace

auto is_bipartite(const DiGraph & g) -> bool
{
    require_symmetric(g, "is_bipartite");
    std::vector<int> colour(g.size(), -1);
    for (int root = 0; root < g.size(); ++root) {
        if (colour[root] >= 0)
            continue;
        colour[root] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.out_neighbours(v)) {
                if (colour[w] < 0) {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                }
                else if (colour[w] == colour[v])
                    return false;
            }
        }
    }
    return true;
}

auto odd_girth(const DiGraph & g) -> std::optional<int>
{
    require_symmetric(g, "odd_girth");
    if (has_loop(g))
        return 1;

    // From each root, an edge joining two vertices at equal BFS depth d closes
    // an odd walk of length 2d+1; the minimum over all roots is the odd girth.
    std::optional<int> best;
    for (int root = 0; root < g.size(); ++root) {
        auto dist = bfs_distances(g, root);
        for (auto [a, b] : g.edges())
            if (dist[a] >= 0 && dist[a] == dist[b]) {
                int length = 2 * dist[a] + 1;
                if (!best || length < *best)
                    best = length;
            }
    }
    return best;
}

namespace {

auto search_hom(const DiGraph & source, const DiGraph & target, bool injective, const SearchOptions & options)
    -> std::optional<Homomorphism>
{
    std::vector<detail::TypedEdge> edges;
    edges.reserve(source.edge_count());
    for (auto [a, b] : source.edges())
        edges.push_back({0, a, b});
    const DiGraph * targets[] = {&target};
    detail::ConstraintSearch search(source.size(), edges, targets, injective, options.budget);

    if (options.order == SearchOrder::fast && source.size() > 0) {
        // Greedy static order: repeatedly take the vertex with most neighbours
        // already placed, breaking ties by degree.
        std::vector<int> degree(source.size(), 0), placed_neighbours(source.size(), 0);
        for (auto [a, b] : source.edges())
            if (a != b) {
                ++degree[a];
                ++degree[b];
            }
        std::vector<char> placed(source.size(), 0);
        std::vector<int> order;
        for (int step = 0; step < source.size(); ++step) {
            int best = -1;
            for (int v = 0; v < source.size(); ++v) {
                if (placed[v])
                    continue;
                if (best < 0 || std::pair(placed_neighbours[v], degree[v]) > std::pair(placed_neighbours[best], degree[best]))
                    best = v;
            }
            placed[best] = 1;
            order.push_back(best);
            for (int w : source.out_neighbours(best))
                ++placed_neighbours[w];
            for (int w : source.in_neighbours(best))
                ++placed_neighbours[w];
        }
        search.set_order(std::move(order));
    }

    auto found = search.find_first();
    if (!found)
        return std::nullopt;
    Homomorphism h{std::move(*found)};
    if (!is_homomorphism(source, target, h.map) ||
        (injective && std::set<int>(h.map.begin(), h.map.end()).size() != h.map.size()))
        throw std::logic_error("homomorphism search returned an invalid map");
    return h;
}

} // namespace

auto find_hom(const DiGraph & source, const DiGraph & target, const SearchOptions & options) -> std::optional<Homomorphism>
{
    return search_hom(source, target, false, options);
}

auto find_embedding(const DiGraph & source, const DiGraph & target, const SearchOptions & options)
    -> std::optional<Homomorphism>
{
    if (source.size() > target.size())
        return std::nullopt;
    return search_hom(source, target, true, options);
}

auto is_smooth(const DiGraph & g) -> bool
{
    for (int v = 0; v < g.size(); ++v)
        if (g.out_neighbours(v).empty() || g.in_neighbours(v).empty())
            return false;
    return true;
}

namespace {

// Visits the underlying undirected graph from `root`, assigning each vertex a
// potential that goes up by one along forward edges and down along backward
// ones. Unreached vertices keep nullopt.
auto potentials(const DiGraph & g, int root) -> std::vector<std::optional<long>>
{
    std::vector<std::optional<long>> p(g.size());
    if (g.size() == 0)
        return p;
    p[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.out_neighbours(v))
            if (!p[w]) {
                p[w] = *p[v] + 1;
                queue.push_back(w);
            }
        for (int w : g.in_neighbours(v))
            if (!p[w]) {
                p[w] = *p[v] - 1;
                queue.push_back(w);
            }
    }
    return p;
}

} // namespace

auto is_weakly_connected(const DiGraph & g) -> bool
{
    auto p = potentials(g, 0);
    return std::all_of(p.begin(), p.end(), [](const auto & x) { return x.has_value(); });
}

auto algebraic_length(const DiGraph & g) -> int
{
    if (!is_weakly_connected(g))
        throw NotWeaklyConnected("algebraic_length requires a weakly connected graph");
    auto p = potentials(g, 0);
    long d = 0;
    for (auto [a, b] : g.edges())
        d = std::gcd(d, *p[a] + 1 - *p[b]);
    return static_cast<int>(d);
}

auto cycle(int n) -> DiGraph
{
    if (n < 1)
        throw InvalidArgument("cycle requires n >= 1");
    std::vector<DiGraph::Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
        edges.emplace_back((i + 1) % n, i);
    }
    return DiGraph(n, std::move(edges));
}

auto clique(int n) -> DiGraph
{
    if (n < 1)
        throw InvalidArgument("clique requires n >= 1");
    std::vector<DiGraph::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                edges.emplace_back(i, j);
    return DiGraph(n, std::move(edges));
}

auto directed_cycle(int n) -> DiGraph
{
    if (n < 1)
        throw InvalidArgument("directed_cycle requires n >= 1");
    std::vector<DiGraph::Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(i, (i + 1) % n);
    return DiGraph(n, std::move(edges));
}

auto path(int n) -> DiGraph
{
    if (n < 1)
        throw InvalidArgument("path requires n >= 1");
    std::vector<DiGraph::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
        edges.emplace_back(i + 1, i);
    }
    return DiGraph(n, std::move(edges));
}

auto petersen() -> DiGraph
{
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    std::vector<DiGraph::Edge> edges;
    auto link = [&](int a, int b) {
        edges.emplace_back(a, b);
        edges.emplace_back(b, a);
    };
    for (int i = 0; i < 5; ++i) {
        link(i, (i + 1) % 5);
        link(5 + i, 5 + (i + 2) % 5);
        link(i, i + 5);
    }
    return DiGraph(10, std::move(edges));
}

auto compose(const DiGraph & first, const DiGraph & second) -> DiGraph
{
    if (first.size() != second.size())
        throw InvalidArgument("compose requires graphs on one vertex set");
    std::vector<DiGraph::Edge> edges;
    for (int a = 0; a < first.size(); ++a) {
        std::vector<char> reached(first.size(), 0);
        for (int b : first.out_neighbours(a))
            for (int c : second.out_neighbours(b))
                reached[c] = 1;
        for (int c = 0; c < first.size(); ++c)
            if (reached[c])
                edges.emplace_back(a, c);
    }
    return DiGraph(first.size(), std::move(edges), first.labels());
}

namespace {

auto dot_name(const DiGraph & g, int v) -> std::string
{
    auto name = g.label(v);
    bool plain = !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    return plain ? name : "\"" + name + "\"";
}

} // namespace

auto to_dot(const DiGraph & g) -> std::string
{
    std::ostringstream out;
    bool undirected = is_symmetric(g);
    out << (undirected ? "graph G {\n" : "digraph G {\n");
    std::vector<char> touched(g.size(), 0);
    for (auto [a, b] : g.edges()) {
        touched[a] = touched[b] = 1;
        if (undirected && a > b)
            continue;
        out << "  " << dot_name(g, a) << (undirected ? " -- " : " -> ") << dot_name(g, b) << ";\n";
    }
    for (int v = 0; v < g.size(); ++v)
        if (!touched[v])
            out << "  " << dot_name(g, v) << ";\n";
    out << "}\n";
    return out.str();
}

auto to_json(const DiGraph & g) -> nlohmann::json
{
    auto edges = nlohmann::json::array();
    for (auto [a, b] : g.edges())
        edges.push_back({a, b});
    return {{"n", g.size()}, {"edges", edges}};
}

auto graph_from_json(const nlohmann::json & j) -> DiGraph
{
    try {
        std::vector<DiGraph::Edge> edges;
        for (const auto & e : j.at("edges")) {
            if (e.size() != 2)
                throw InvalidArgument("graph edges must be pairs");
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        return DiGraph(j.at("n").get<int>(), std::move(edges), std::move(labels));
    }
    catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("malformed graph JSON: ") + e.what());
    }
}

} // namespace loopcond
