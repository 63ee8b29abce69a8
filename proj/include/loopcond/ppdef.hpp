#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "json.hpp"
#include "loopcond/graph.hpp"

namespace loopcond {

using Tuple = std::vector<int>;

/// A k-ary relation over the universe 0..universe_size-1, stored as an explicit tuple set.
class Relation
{
public:
    Relation(int universe_size, int arity);
    Relation(int universe_size, int arity, std::set<Tuple> tuples);

    /// The edge set of g as a binary relation.
    static auto from_graph(const DiGraph & g) -> Relation;

    [[nodiscard]] auto universe_size() const noexcept -> int { return _universe_size; }
    [[nodiscard]] auto arity() const noexcept -> int { return _arity; }
    [[nodiscard]] auto tuples() const noexcept -> const std::set<Tuple> & { return _tuples; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return _tuples.size(); }
    [[nodiscard]] auto contains(const Tuple & t) const -> bool { return _tuples.contains(t); }

    void insert(Tuple t);

    /// Binary relations only; throws InvalidArgument otherwise.
    [[nodiscard]] auto to_graph() const -> DiGraph;

    friend auto operator==(const Relation &, const Relation &) -> bool = default;

private:
    void check(const Tuple & t) const;

    int _universe_size;
    int _arity;
    std::set<Tuple> _tuples;
};

/// A pp-formula drawn as a graph: vertices are the formula's variables, an
/// edge (type, a, b) is the conjunct slot_type(a, b), and the distinguished
/// vertices are the free variables in order. Duplicate distinguished vertices
/// express equalities.
struct Gadget
{
    struct Edge
    {
        int type;
        int from;
        int to;

        friend auto operator==(const Edge &, const Edge &) -> bool = default;
    };

    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<int> distinguished;
    int slot_count = 1;

    /// Throws InvalidArgument when an index is out of range.
    void validate() const;
};

struct EvaluateOptions
{
    std::uint64_t budget = 10'000'000;
};

/// All tuples (f(u1), ..., f(uk)) over maps f from gadget vertices into the
/// common vertex set of `inputs` that send every type-i edge to an edge of
/// inputs[i]. Throws SlotMismatch or BudgetExceeded.
[[nodiscard]] auto evaluate(const Gadget & gadget, std::span<const DiGraph> inputs, const EvaluateOptions & options = {})
    -> Relation;

/// One full map of gadget vertices witnessing `tuple`, or nullopt if the
/// tuple is not in the defined relation.
[[nodiscard]] auto find_witness(const Gadget & gadget, std::span<const DiGraph> inputs, const Tuple & tuple,
    const EvaluateOptions & options = {}) -> std::optional<std::vector<int>>;

/// Reads a (k*l)-ary relation as a k-ary relation on the l-th power of the
/// universe. An l-tuple (a1..al) is encoded mixed-radix, a1 most significant.
/// Throws ArityNotDivisible.
[[nodiscard]] auto pp_power(const Relation & r, int l) -> Relation;

/// Inverse of pp_power: expands each power element back into its l coordinates.
[[nodiscard]] auto flatten_power(const Relation & r, int base_size, int l) -> Relation;

/// `{"vertices": n, "edges": [[type,a,b],...], "distinguished": [...], "slots": s}`
[[nodiscard]] auto to_json(const Gadget & g) -> nlohmann::json;
[[nodiscard]] auto gadget_from_json(const nlohmann::json & j) -> Gadget;

[[nodiscard]] auto to_json(const Relation & r) -> nlohmann::json;

} // namespace loopcond
