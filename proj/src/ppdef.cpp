#include "loopcond/ppdef.hpp"

#include <algorithm>
#include <limits>

#include "loopcond/detail/search.hpp"
#include "loopcond/error.hpp"

namespace loopcond {

Relation::Relation(int universe_size, int arity) :
    _universe_size(universe_size),
    _arity(arity)
{
    if (universe_size < 1)
        throw InvalidArgument("relation universe must be nonempty");
    if (arity < 0)
        throw InvalidArgument("negative relation arity");
}

Relation::Relation(int universe_size, int arity, std::set<Tuple> tuples) :
    Relation(universe_size, arity)
{
    for (const auto & t : tuples)
        check(t);
    _tuples = std::move(tuples);
}

auto Relation::from_graph(const DiGraph & g) -> Relation
{
    Relation r(std::max(g.size(), 1), 2);
    for (auto [a, b] : g.edges())
        r._tuples.insert({a, b});
    return r;
}

void Relation::check(const Tuple & t) const
{
    if (static_cast<int>(t.size()) != _arity)
        throw InvalidArgument("tuple length does not match relation arity");
    for (int x : t)
        if (x < 0 || x >= _universe_size)
            throw InvalidArgument("tuple entry outside the universe");
}

void Relation::insert(Tuple t)
{
    check(t);
    _tuples.insert(std::move(t));
}

auto Relation::to_graph() const -> DiGraph
{
    if (_arity != 2)
        throw InvalidArgument("only binary relations are graphs");
    std::vector<DiGraph::Edge> edges;
    edges.reserve(_tuples.size());
    for (const auto & t : _tuples)
        edges.emplace_back(t[0], t[1]);
    return DiGraph(_universe_size, std::move(edges));
}

void Gadget::validate() const
{
    if (vertex_count < 0 || slot_count < 0)
        throw InvalidArgument("gadget sizes must be nonnegative");
    for (const auto & e : edges)
        if (e.type < 0 || e.type >= slot_count || e.from < 0 || e.from >= vertex_count || e.to < 0 ||
            e.to >= vertex_count)
            throw InvalidArgument("gadget edge out of range");
    for (int d : distinguished)
        if (d < 0 || d >= vertex_count)
            throw InvalidArgument("distinguished vertex out of range");
}

namespace {

struct PreparedSearch
{
    std::vector<detail::TypedEdge> edges;
    std::vector<const DiGraph *> targets;
    std::vector<int> order;
    int distinct_distinguished = 0;
};

auto prepare(const Gadget & gadget, std::span<const DiGraph> inputs) -> PreparedSearch
{
    gadget.validate();
    if (static_cast<int>(inputs.size()) != gadget.slot_count)
        throw SlotMismatch("gadget has " + std::to_string(gadget.slot_count) + " slots but " +
            std::to_string(inputs.size()) + " input graphs were given");
    for (const auto & g : inputs)
        if (g.size() != inputs.front().size())
            throw SlotMismatch("input graphs must share one vertex set");

    PreparedSearch p;
    for (const auto & e : gadget.edges)
        p.edges.push_back({e.type, e.from, e.to});
    for (const auto & g : inputs)
        p.targets.push_back(&g);

    // Distinguished vertices first, in order of first appearance; then the rest.
    std::vector<char> seen(gadget.vertex_count, 0);
    for (int d : gadget.distinguished)
        if (!seen[d]) {
            seen[d] = 1;
            p.order.push_back(d);
        }
    p.distinct_distinguished = static_cast<int>(p.order.size());
    for (int v = 0; v < gadget.vertex_count; ++v)
        if (!seen[v])
            p.order.push_back(v);
    return p;
}

} // namespace

auto evaluate(const Gadget & gadget, std::span<const DiGraph> inputs, const EvaluateOptions & options) -> Relation
{
    auto p = prepare(gadget, inputs);
    // With no input graph there is no vertex set to map into.
    if (inputs.empty())
        throw SlotMismatch("evaluate needs at least one input graph to fix the vertex set");
    Relation result(std::max(inputs.front().size(), 1), static_cast<int>(gadget.distinguished.size()));

    detail::ConstraintSearch search(gadget.vertex_count, p.edges, p.targets, false, options.budget);
    search.set_order(p.order);
    search.for_each_extendable_prefix(p.distinct_distinguished, [&](const std::vector<int> & assignment) {
        Tuple t;
        t.reserve(gadget.distinguished.size());
        for (int d : gadget.distinguished)
            t.push_back(assignment[d]);
        result.insert(std::move(t));
    });
    return result;
}

auto find_witness(const Gadget & gadget, std::span<const DiGraph> inputs, const Tuple & tuple,
    const EvaluateOptions & options) -> std::optional<std::vector<int>>
{
    auto p = prepare(gadget, inputs);
    if (inputs.empty())
        throw SlotMismatch("find_witness needs at least one input graph to fix the vertex set");
    if (tuple.size() != gadget.distinguished.size())
        throw InvalidArgument("tuple length does not match the gadget's distinguished vertices");

    detail::ConstraintSearch search(gadget.vertex_count, p.edges, p.targets, false, options.budget);
    search.set_order(p.order);
    std::vector<int> pinned(gadget.vertex_count, -1);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        int d = gadget.distinguished[i];
        if (pinned[d] >= 0 && pinned[d] != tuple[i])
            return std::nullopt;
        pinned[d] = tuple[i];
        search.pin(d, tuple[i]);
    }
    return search.find_first();
}

namespace {

auto checked_power(int base, int l) -> int
{
    long long size = 1;
    for (int i = 0; i < l; ++i) {
        size *= base;
        if (size > std::numeric_limits<int>::max())
            throw InvalidArgument("power universe too large");
    }
    return static_cast<int>(size);
}

} // namespace

auto pp_power(const Relation & r, int l) -> Relation
{
    if (l < 1)
        throw InvalidArgument("pp_power exponent must be positive");
    if (r.arity() % l != 0)
        throw ArityNotDivisible("arity " + std::to_string(r.arity()) + " is not divisible by " + std::to_string(l));
    int k = r.arity() / l;
    Relation result(checked_power(r.universe_size(), l), k);
    for (const auto & t : r.tuples()) {
        Tuple encoded(k, 0);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < l; ++i)
                encoded[j] = encoded[j] * r.universe_size() + t[j * l + i];
        result.insert(std::move(encoded));
    }
    return result;
}

auto flatten_power(const Relation & r, int base_size, int l) -> Relation
{
    if (l < 1 || base_size < 1)
        throw InvalidArgument("flatten_power needs a positive base and exponent");
    if (checked_power(base_size, l) != r.universe_size())
        throw UniverseMismatch("relation universe is not base_size^l");
    Relation result(base_size, r.arity() * l);
    for (const auto & t : r.tuples()) {
        Tuple flat(t.size() * l);
        for (std::size_t j = 0; j < t.size(); ++j) {
            int code = t[j];
            for (int i = l - 1; i >= 0; --i) {
                flat[j * l + i] = code % base_size;
                code /= base_size;
            }
        }
        result.insert(std::move(flat));
    }
    return result;
}

auto to_json(const Gadget & g) -> nlohmann::json
{
    auto edges = nlohmann::json::array();
    for (const auto & e : g.edges)
        edges.push_back({e.type, e.from, e.to});
    return {{"vertices", g.vertex_count}, {"edges", edges}, {"distinguished", g.distinguished}, {"slots", g.slot_count}};
}

auto gadget_from_json(const nlohmann::json & j) -> Gadget
{
    try {
        Gadget g;
        g.vertex_count = j.at("vertices").get<int>();
        for (const auto & e : j.at("edges")) {
            if (e.size() != 3)
                throw InvalidArgument("gadget edges must be [type, a, b]");
            g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
        }
        g.distinguished = j.at("distinguished").get<std::vector<int>>();
        g.slot_count = j.at("slots").get<int>();
        g.validate();
        return g;
    }
    catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("malformed gadget JSON: ") + e.what());
    }
}

auto to_json(const Relation & r) -> nlohmann::json
{
    return {{"universe", r.universe_size()}, {"arity", r.arity()}, {"tuples", r.tuples()}};
}

} // namespace loopcond
