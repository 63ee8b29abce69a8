#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace loopcond {

/// Finite directed graph on vertices 0..n-1.
///
/// The edge set is kept sorted and duplicate-free; a loop is an ordinary
/// edge (v, v). Vertex labels are optional and only used for display.
class DiGraph
{
public:
    using Edge = std::pair<int, int>;

    DiGraph() = default;
    explicit DiGraph(int n, std::vector<Edge> edges = {}, std::vector<std::string> labels = {});

    [[nodiscard]] auto size() const noexcept -> int { return _n; }
    [[nodiscard]] auto edges() const noexcept -> const std::vector<Edge> & { return _edges; }
    [[nodiscard]] auto edge_count() const noexcept -> std::size_t { return _edges.size(); }
    [[nodiscard]] auto has_edge(int from, int to) const -> bool;

    [[nodiscard]] auto out_neighbours(int v) const -> const std::vector<int> & { return _out[v]; }
    [[nodiscard]] auto in_neighbours(int v) const -> const std::vector<int> & { return _in[v]; }

    [[nodiscard]] auto labels() const noexcept -> const std::vector<std::string> & { return _labels; }
    /// The label of v, or its index when the graph is unlabeled.
    [[nodiscard]] auto label(int v) const -> std::string;

    /// Equality of vertex count and edge set; labels are ignored.
    friend auto operator==(const DiGraph & a, const DiGraph & b) -> bool
    {
        return a._n == b._n && a._edges == b._edges;
    }

private:
    int _n = 0;
    std::vector<Edge> _edges;
    std::vector<std::string> _labels;
    std::vector<char> _adjacency;
    std::vector<std::vector<int>> _out, _in;
};

/// A vertex map from a source graph to a target graph.
struct Homomorphism
{
    std::vector<int> map;

    friend auto operator==(const Homomorphism &, const Homomorphism &) -> bool = default;
};

/// True iff every source edge lands on a target edge under `map`.
[[nodiscard]] auto is_homomorphism(const DiGraph & source, const DiGraph & target, const std::vector<int> & map) -> bool;

enum class SearchOrder
{
    /// Ascending vertex order, ascending candidates: the witness is the
    /// lexicographically least homomorphism.
    deterministic,
    /// Static most-constrained-first order. Existence is unaffected; which
    /// witness comes back is unspecified.
    fast
};

struct SearchOptions
{
    std::uint64_t budget = 10'000'000;
    SearchOrder order = SearchOrder::deterministic;
};

[[nodiscard]] auto has_loop(const DiGraph & g) -> bool;
[[nodiscard]] auto symmetric_part(const DiGraph & g) -> DiGraph;
[[nodiscard]] auto is_symmetric(const DiGraph & g) -> bool;

/// 2-colourability of a symmetric graph; a loop makes a graph non-bipartite.
/// Throws NotSymmetric.
[[nodiscard]] auto is_bipartite(const DiGraph & g) -> bool;

/// Length of the shortest odd cycle of a symmetric graph (1 for a loop),
/// or nullopt if the graph is bipartite. Throws NotSymmetric.
[[nodiscard]] auto odd_girth(const DiGraph & g) -> std::optional<int>;

/// Throws BudgetExceeded when the budget runs out before an answer is known.
[[nodiscard]] auto find_hom(const DiGraph & source, const DiGraph & target, const SearchOptions & options = {})
    -> std::optional<Homomorphism>;

/// Injective homomorphism, i.e. `source` as a (not necessarily induced) subgraph of `target`.
[[nodiscard]] auto find_embedding(const DiGraph & source, const DiGraph & target, const SearchOptions & options = {})
    -> std::optional<Homomorphism>;

[[nodiscard]] auto is_smooth(const DiGraph & g) -> bool;
[[nodiscard]] auto is_weakly_connected(const DiGraph & g) -> bool;

/// gcd over all closed walks of the underlying undirected graph of
/// (forward edges - backward edges). A homomorphism to the directed k-cycle
/// exists iff k divides the result; 0 means every directed cycle is a target.
/// Throws NotWeaklyConnected.
[[nodiscard]] auto algebraic_length(const DiGraph & g) -> int;

// Standard families, vertices numbered 0..n-1. All require n >= 1.
[[nodiscard]] auto cycle(int n) -> DiGraph;
[[nodiscard]] auto clique(int n) -> DiGraph;
[[nodiscard]] auto directed_cycle(int n) -> DiGraph;
/// Symmetric path on n vertices (n-1 undirected edges).
[[nodiscard]] auto path(int n) -> DiGraph;
[[nodiscard]] auto petersen() -> DiGraph;

/// Relational composition: (a, c) iff some b has (a, b) in `first` and (b, c) in `second`.
[[nodiscard]] auto compose(const DiGraph & first, const DiGraph & second) -> DiGraph;

/// Graphviz text. Symmetric graphs become an undirected `graph` block with one
/// `a -- b;` line per unordered pair, all others a `digraph` with `a -> b;` lines.
[[nodiscard]] auto to_dot(const DiGraph & g) -> std::string;

/// `{"n": int, "edges": [[i,j],...]}`
[[nodiscard]] auto to_json(const DiGraph & g) -> nlohmann::json;
[[nodiscard]] auto graph_from_json(const nlohmann::json & j) -> DiGraph;

} // namespace loopcond
