#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "loopcond/graph.hpp"

namespace loopcond {

/// A single linear identity t(u1,...,un) = t(v1,...,vn).
///
/// Variables are listed in first-occurrence order, scanning the left-hand
/// side and then the right-hand side; that order fixes vertex numbering in
/// condition_graph.
class LoopCondition
{
public:
    /// Throws SymbolMismatch, ArityMismatch or EmptyArgs; names are not
    /// re-checked against the identifier grammar.
    LoopCondition(std::string symbol, std::vector<std::string> lhs, std::string rhs_symbol, std::vector<std::string> rhs);
    LoopCondition(std::string symbol, std::vector<std::string> lhs, std::vector<std::string> rhs);

    [[nodiscard]] auto symbol() const noexcept -> const std::string & { return _symbol; }
    [[nodiscard]] auto arity() const noexcept -> int { return static_cast<int>(_lhs.size()); }
    [[nodiscard]] auto lhs() const noexcept -> const std::vector<std::string> & { return _lhs; }
    [[nodiscard]] auto rhs() const noexcept -> const std::vector<std::string> & { return _rhs; }
    [[nodiscard]] auto variables() const noexcept -> const std::vector<std::string> & { return _variables; }

    /// Index into variables() of the variable at each position.
    [[nodiscard]] auto lhs_indices() const noexcept -> const std::vector<int> & { return _lhs_index; }
    [[nodiscard]] auto rhs_indices() const noexcept -> const std::vector<int> & { return _rhs_index; }

    friend auto operator==(const LoopCondition & a, const LoopCondition & b) -> bool
    {
        return a._symbol == b._symbol && a._lhs == b._lhs && a._rhs == b._rhs;
    }

private:
    std::string _symbol;
    std::vector<std::string> _lhs, _rhs, _variables;
    std::vector<int> _lhs_index, _rhs_index;
};

/// Grammar: ident '(' varlist ')' '=' ident '(' varlist ')', identifiers
/// [A-Za-z0-9_]+, whitespace anywhere between tokens.
[[nodiscard]] auto parse_condition(std::string_view text) -> LoopCondition;

/// Canonical form without whitespace, e.g. "t(x,y)=t(y,x)".
[[nodiscard]] auto print_condition(const LoopCondition & c) -> std::string;

/// Vertices are the variables, one edge (u_i, v_i) per position, duplicates merged.
[[nodiscard]] auto condition_graph(const LoopCondition & c) -> DiGraph;

/// The condition with one argument position per edge of g, so that
/// condition_graph gives back g. Variables are the labels of g, or v0, v1, ...
/// Isolated vertices of g do not survive. Throws InvalidArgument on an edgeless graph.
[[nodiscard]] auto condition_from_graph(const DiGraph & g, std::string symbol = "t") -> LoopCondition;

} // namespace loopcond
