#pragma once

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "loopcond/graph.hpp"
#include "loopcond/identity.hpp"

namespace loopcond {

/// The condition graph has a loop; a projection satisfies the condition.
struct Trivial
{
    friend auto operator==(const Trivial &, const Trivial &) -> bool = default;
};

/// Symmetric, loopless and 2-colourable.
struct Bipartite
{
    friend auto operator==(const Bipartite &, const Bipartite &) -> bool = default;
};

/// Symmetric, loopless, with an odd cycle.
struct NonbipartiteLoopless
{
    int odd_girth = 0;

    friend auto operator==(const NonbipartiteLoopless &, const NonbipartiteLoopless &) -> bool = default;
};

/// Loopless and not symmetric. No equivalence class is claimed; the fields
/// are the hypotheses under which finite algebras are known to behave.
struct OrientedUnresolved
{
    bool smooth = false;
    std::optional<int> algebraic_length;
    bool weakly_connected = false;

    friend auto operator==(const OrientedUnresolved &, const OrientedUnresolved &) -> bool = default;
};

using ConditionClass = std::variant<Trivial, Bipartite, NonbipartiteLoopless, OrientedUnresolved>;

[[nodiscard]] auto classify_graph(const DiGraph & g) -> ConditionClass;
[[nodiscard]] auto classify(const LoopCondition & c) -> ConditionClass;

[[nodiscard]] auto class_name(const ConditionClass & k) -> std::string;

/// A homomorphism from the graph of c to the graph of d, which shows that c
/// implies d. Absence only means this method does not establish the implication.
[[nodiscard]] auto implies_by_hom(const LoopCondition & c, const LoopCondition & d, const SearchOptions & options = {})
    -> std::optional<Homomorphism>;

[[nodiscard]] auto equivalence_note(const ConditionClass & k) -> std::string;

/// `{"class": str, "details": {...}, "note": str}`
[[nodiscard]] auto to_json(const ConditionClass & k) -> nlohmann::json;

} // namespace loopcond
