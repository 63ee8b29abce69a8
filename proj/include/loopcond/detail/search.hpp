#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "loopcond/graph.hpp"

namespace loopcond::detail {

class Bits
{
public:
    Bits() = default;
    explicit Bits(int n, bool fill = false);

    [[nodiscard]] auto test(int i) const -> bool { return (_words[i >> 6] >> (i & 63)) & 1U; }
    void set(int i) { _words[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { _words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void intersect(const Bits & other);
    [[nodiscard]] auto none() const -> bool;
    /// First set index >= from, or -1.
    [[nodiscard]] auto next(int from) const -> int;

private:
    int _n = 0;
    std::vector<std::uint64_t> _words;
};

struct TypedEdge
{
    int type;
    int from;
    int to;
};

/// Backtracking search for maps from a pattern (vertices plus typed edges)
/// into a family of target graphs over one vertex set, with forward checking.
/// Vertices are assigned in a fixed order and candidates ascend, so results
/// are deterministic.
class ConstraintSearch
{
public:
    ConstraintSearch(int pattern_size, std::span<const TypedEdge> edges, std::span<const DiGraph * const> targets,
        bool injective, std::uint64_t budget);

    /// Defaults to ascending vertex order.
    void set_order(std::vector<int> order);

    /// Pin a pattern vertex to a single value before searching.
    void pin(int vertex, int value);

    /// First complete assignment in search order.
    [[nodiscard]] auto find_first() -> std::optional<std::vector<int>>;

    /// Calls `visit` with every consistent assignment of the first `prefix`
    /// vertices of the order that extends to a complete assignment. The
    /// vector passed holds values for all pattern vertices; entries outside
    /// the prefix belong to one arbitrary completion.
    void for_each_extendable_prefix(int prefix, const std::function<void(const std::vector<int> &)> & visit);

private:
    struct Incidence
    {
        int type;
        int other;
        bool outgoing;
    };

    auto assign(int level, int value) -> bool;
    auto complete(int level) -> bool;
    void enumerate(int level, int prefix, const std::function<void(const std::vector<int> &)> & visit);

    int _pattern_size;
    int _target_size;
    bool _injective;
    std::uint64_t _budget;
    std::uint64_t _expansions = 0;
    bool _infeasible = false;
    std::vector<int> _order;
    std::vector<int> _position;
    std::vector<std::vector<Incidence>> _incidences;
    std::vector<std::vector<Bits>> _out_rows, _in_rows;
    std::vector<std::vector<Bits>> _domains;
    std::vector<int> _assignment;
};

} // namespace loopcond::detail
