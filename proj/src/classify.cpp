#include "loopcond/classify.hpp"

namespace loopcond {

auto classify_graph(const DiGraph & g) -> ConditionClass
{
    if (has_loop(g))
        return Trivial{};
    if (is_symmetric(g)) {
        if (auto girth = odd_girth(g))
            return NonbipartiteLoopless{*girth};
        return Bipartite{};
    }
    OrientedUnresolved k;
    k.smooth = is_smooth(g);
    k.weakly_connected = is_weakly_connected(g);
    if (k.weakly_connected)
        k.algebraic_length = algebraic_length(g);
    return k;
}

auto classify(const LoopCondition & c) -> ConditionClass
{
    return classify_graph(condition_graph(c));
}

auto class_name(const ConditionClass & k) -> std::string
{
    static const char * const names[] = {"Trivial", "Bipartite", "NonbipartiteLoopless", "OrientedUnresolved"};
    return names[k.index()];
}

auto implies_by_hom(const LoopCondition & c, const LoopCondition & d, const SearchOptions & options)
    -> std::optional<Homomorphism>
{
    return find_hom(condition_graph(c), condition_graph(d), options);
}

auto equivalence_note(const ConditionClass & k) -> std::string
{
    if (std::holds_alternative<Trivial>(k))
        return "The graph has a loop, so the condition is trivial: it is satisfied by a projection.";
    if (std::holds_alternative<Bipartite>(k))
        return "Bipartite and loopless: equivalent to every other bipartite loop condition, in particular to "
               "commutativity t(x,y)=t(y,x). These are the strongest non-trivial undirected loop conditions.";
    if (std::holds_alternative<NonbipartiteLoopless>(k))
        return "Non-bipartite and loopless: equivalent to the Siggers condition s(x,y,y,z,z,x)=s(y,x,z,y,x,z), to "
               "every clique and every odd cycle condition. These are the weakest non-trivial loop conditions.";
    const auto & o = std::get<OrientedUnresolved>(k);
    if (o.weakly_connected && o.smooth && o.algebraic_length == 1)
        return "Oriented graph, weakly connected, smooth, algebraic length 1: by the finite-algebra theorem for such "
               "graphs it is equivalent to the Siggers condition for finite algebras. Equivalence for arbitrary "
               "algebras is open.";
    return "Oriented graph outside the weakly connected, smooth, algebraic length 1 case: no equivalence class is "
           "established.";
}

auto to_json(const ConditionClass & k) -> nlohmann::json
{
    nlohmann::json details = nlohmann::json::object();
    if (const auto * n = std::get_if<NonbipartiteLoopless>(&k))
        details = {{"symmetric", true}, {"odd_girth", n->odd_girth}};
    else if (std::holds_alternative<Bipartite>(k))
        details = {{"symmetric", true}, {"odd_girth", nullptr}};
    else if (std::holds_alternative<Trivial>(k))
        details = {{"has_loop", true}};
    else {
        const auto & o = std::get<OrientedUnresolved>(k);
        details = {{"smooth", o.smooth}, {"weakly_connected", o.weakly_connected},
            {"algebraic_length", o.algebraic_length ? nlohmann::json(*o.algebraic_length) : nlohmann::json()}};
    }
    return {{"class", class_name(k)}, {"details", details}, {"note", equivalence_note(k)}};
}

} // namespace loopcond
