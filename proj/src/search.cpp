#include "loopcond/detail/search.hpp"

#include <bit>
#include <numeric>

#include "loopcond/error.hpp"

namespace loopcond::detail {

Bits::Bits(int n, bool fill) :
    _n(n),
    _words((n + 63) / 64, fill ? ~std::uint64_t{0} : 0)
{
    if (fill && (n & 63))
        _words.back() = (std::uint64_t{1} << (n & 63)) - 1;
}

void Bits::intersect(const Bits & other)
{
    for (std::size_t i = 0; i < _words.size(); ++i)
        _words[i] &= other._words[i];
}

auto Bits::none() const -> bool
{
    for (auto w : _words)
        if (w)
            return false;
    return true;
}

auto Bits::next(int from) const -> int
{
    if (from >= _n)
        return -1;
    auto word = static_cast<std::size_t>(from >> 6);
    auto bits = _words[word] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (bits)
            return static_cast<int>(word * 64) + std::countr_zero(bits);
        if (++word == _words.size())
            return -1;
        bits = _words[word];
    }
}

ConstraintSearch::ConstraintSearch(int pattern_size, std::span<const TypedEdge> edges,
    std::span<const DiGraph * const> targets, bool injective, std::uint64_t budget) :
    _pattern_size(pattern_size),
    _target_size(targets.empty() ? 0 : targets.front()->size()),
    _injective(injective),
    _budget(budget),
    _incidences(pattern_size),
    _assignment(pattern_size, -1)
{
    for (const auto * t : targets) {
        if (t->size() != _target_size)
            throw InvalidArgument("target graphs must share one vertex set");
        std::vector<Bits> out(_target_size, Bits(_target_size)), in(_target_size, Bits(_target_size));
        for (auto [a, b] : t->edges()) {
            out[a].set(b);
            in[b].set(a);
        }
        _out_rows.push_back(std::move(out));
        _in_rows.push_back(std::move(in));
    }

    _domains.assign(pattern_size + 1, std::vector<Bits>(pattern_size, Bits(_target_size, true)));
    auto & initial = _domains[0];
    for (const auto & e : edges) {
        if (e.type < 0 || e.type >= static_cast<int>(targets.size()))
            throw InvalidArgument("edge type out of range");
        if (e.from < 0 || e.from >= pattern_size || e.to < 0 || e.to >= pattern_size)
            throw InvalidArgument("pattern edge endpoint out of range");

        // Unary pruning: sources need out-degree, sinks in-degree, loops a loop.
        Bits has_out(_target_size), has_in(_target_size), looped(_target_size);
        for (int c = 0; c < _target_size; ++c) {
            if (!_out_rows[e.type][c].none())
                has_out.set(c);
            if (!_in_rows[e.type][c].none())
                has_in.set(c);
            if (_out_rows[e.type][c].test(c))
                looped.set(c);
        }
        if (e.from == e.to) {
            initial[e.from].intersect(looped);
            continue;
        }
        initial[e.from].intersect(has_out);
        initial[e.to].intersect(has_in);
        _incidences[e.from].push_back({e.type, e.to, true});
        _incidences[e.to].push_back({e.type, e.from, false});
    }

    _order.resize(pattern_size);
    std::iota(_order.begin(), _order.end(), 0);
    _position = _order;
}

void ConstraintSearch::set_order(std::vector<int> order)
{
    if (static_cast<int>(order.size()) != _pattern_size)
        throw InvalidArgument("search order must list every pattern vertex");
    _order = std::move(order);
    for (int i = 0; i < _pattern_size; ++i)
        _position[_order[i]] = i;
}

void ConstraintSearch::pin(int vertex, int value)
{
    if (value < 0 || value >= _target_size) {
        _infeasible = true;
        return;
    }
    auto & domain = _domains[0][vertex];
    bool present = domain.test(value);
    domain = Bits(_target_size);
    if (present)
        domain.set(value);
}

auto ConstraintSearch::assign(int level, int value) -> bool
{
    if (++_expansions > _budget)
        throw BudgetExceeded(_budget);

    int v = _order[level];
    _domains[level + 1] = _domains[level];
    auto & next = _domains[level + 1];
    _assignment[v] = value;

    for (const auto & inc : _incidences[v]) {
        if (_position[inc.other] <= level)
            continue;
        auto & domain = next[inc.other];
        domain.intersect(inc.outgoing ? _out_rows[inc.type][value] : _in_rows[inc.type][value]);
        if (domain.none())
            return false;
    }
    if (_injective) {
        for (int i = level + 1; i < _pattern_size; ++i) {
            auto & domain = next[_order[i]];
            domain.reset(value);
            if (domain.none())
                return false;
        }
    }
    return true;
}

auto ConstraintSearch::complete(int level) -> bool
{
    if (level == _pattern_size)
        return true;
    const auto & domain = _domains[level][_order[level]];
    for (int c = domain.next(0); c != -1; c = domain.next(c + 1))
        if (assign(level, c) && complete(level + 1))
            return true;
    _assignment[_order[level]] = -1;
    return false;
}

void ConstraintSearch::enumerate(int level, int prefix, const std::function<void(const std::vector<int> &)> & visit)
{
    if (level == prefix) {
        if (complete(level))
            visit(_assignment);
        return;
    }
    const auto & domain = _domains[level][_order[level]];
    for (int c = domain.next(0); c != -1; c = domain.next(c + 1))
        if (assign(level, c))
            enumerate(level + 1, prefix, visit);
}

auto ConstraintSearch::find_first() -> std::optional<std::vector<int>>
{
    if (_infeasible || (_target_size == 0 && _pattern_size > 0))
        return std::nullopt;
    for (const auto & d : _domains[0])
        if (d.none())
            return std::nullopt;
    if (complete(0))
        return _assignment;
    return std::nullopt;
}

void ConstraintSearch::for_each_extendable_prefix(int prefix, const std::function<void(const std::vector<int> &)> & visit)
{
    if (_infeasible || (_target_size == 0 && _pattern_size > 0))
        return;
    for (const auto & d : _domains[0])
        if (d.none())
            return;
    enumerate(0, prefix, visit);
}

} // namespace loopcond::detail
