#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "loopcond/identity.hpp"
#include "loopcond/ppdef.hpp"

namespace loopcond {

/// A basic operation given by its full table. The entry for (x1..xm) sits at
/// index sum x_i * size^(m-i): row-major, last argument fastest.
struct Operation
{
    std::string name;
    int arity = 0;
    std::vector<int> table;
};

class FiniteAlgebra
{
public:
    /// Throws InvalidArgument on bad table lengths, entries or duplicate names.
    FiniteAlgebra(int size, std::vector<Operation> operations);

    [[nodiscard]] auto size() const noexcept -> int { return _size; }
    [[nodiscard]] auto operations() const noexcept -> const std::vector<Operation> & { return _operations; }
    [[nodiscard]] auto find(const std::string & name) const -> std::optional<std::size_t>;

    [[nodiscard]] auto apply(std::size_t op, std::span<const int> args) const -> int;

private:
    int _size;
    std::vector<Operation> _operations;
};

/// (Z_m, m(x,y,z) = x + y - z mod m), operation named "m".
[[nodiscard]] auto affine_algebra(int modulus) -> FiniteAlgebra;

/// A single binary operation "p" returning its first argument.
[[nodiscard]] auto projection_algebra(int size = 2) -> FiniteAlgebra;

[[nodiscard]] auto algebra_from_json(const nlohmann::json & j) -> FiniteAlgebra;
[[nodiscard]] auto to_json(const FiniteAlgebra & a) -> nlohmann::json;

/// Term over variables x0, x1, ...; nodes are shared, so terms produced by
/// closure stay compact even when their tree form is large.
class Term
{
public:
    static auto variable(int index) -> Term;
    static auto apply(std::string op, std::vector<Term> args) -> Term;

    [[nodiscard]] auto is_variable() const -> bool;
    [[nodiscard]] auto variable_index() const -> int;
    [[nodiscard]] auto op() const -> const std::string &;
    [[nodiscard]] auto args() const -> const std::vector<Term> &;

    /// Identity of the shared node, for memoised traversals.
    [[nodiscard]] auto id() const -> const void * { return _node.get(); }

    /// e.g. "m(x0,m(x1,x0,x2),x2)".
    [[nodiscard]] auto to_string() const -> std::string;

private:
    struct Node
    {
        int variable = -1;
        std::string op;
        std::vector<Term> args;
    };

    explicit Term(std::shared_ptr<const Node> node) :
        _node(std::move(node))
    {
    }

    std::shared_ptr<const Node> _node;
};

struct Satisfied
{
    Term witness;
};

struct NotSatisfied
{
};

struct ResourceExceeded
{
    std::size_t elements_generated = 0;
};

using Decision = std::variant<Satisfied, NotSatisfied, ResourceExceeded>;

[[nodiscard]] auto decision_name(const Decision & d) -> std::string;

/// Throws UniverseMismatch.
[[nodiscard]] auto is_compatible(const FiniteAlgebra & a, const Relation & r) -> bool;

/// How an element of a subpower was produced.
struct Provenance
{
    /// Index into the generator list, or -1 for an operation result.
    int generator = -1;
    std::size_t op = 0;
    std::vector<std::size_t> parents;
};

struct Subpower
{
    int arity = 0;
    std::vector<Tuple> elements;
    std::vector<Provenance> provenance;
    /// The cap was hit; `elements` is then a proper subset of the closure.
    bool exceeded = false;

    [[nodiscard]] auto relation(int universe_size) const -> Relation;
    /// The term producing element `index`, in the generator variables x0, x1, ...
    [[nodiscard]] auto term(const FiniteAlgebra & a, std::size_t index) const -> Term;
};

/// Least set of k-tuples containing `generators` and closed under every
/// operation applied coordinatewise. Nullary operations contribute their
/// constant tuples.
[[nodiscard]] auto generate_subpower(const FiniteAlgebra & a, int k, const std::vector<Tuple> & generators,
    std::size_t cap = 1'000'000) -> Subpower;

struct DecisionLimits
{
    /// Bound on |A|^(number of variables), the length of a free-algebra table.
    std::size_t max_entries = 4096;
    /// Bound on the number of generated pair-tables.
    std::size_t max_elements = 1'000'000;
};

/// Decides whether the variety generated by `a` satisfies `c`: closes the
/// pairs (x_u, x_v), one per edge of the condition graph, inside the square
/// of the free algebra on the condition's variables and looks for a pair with
/// equal coordinates. A witness term in the position variables x0..x(arity-1)
/// is extracted and re-verified. Throws ExponentCap when the free-algebra
/// tables would exceed `limits.max_entries`.
[[nodiscard]] auto satisfies_condition(const FiniteAlgebra & a, const LoopCondition & c, const DecisionLimits & limits = {})
    -> Decision;

/// An assignment of the condition's variables (indexed like c.variables())
/// on which t(lhs) and t(rhs) differ. Throws BadTerm.
[[nodiscard]] auto find_counterexample(const FiniteAlgebra & a, const LoopCondition & c, const Term & t)
    -> std::optional<std::vector<int>>;

/// t(u1..un) = t(v1..vn) holds identically in `a`, where t's variable xi
/// stands for argument position i. Throws BadTerm.
[[nodiscard]] auto verify_witness(const FiniteAlgebra & a, const LoopCondition & c, const Term & t) -> bool;

/// Coefficients c_i in Z_m with sum c_i = 1 and, for every variable w,
/// sum over {i : u_i = w} of c_i = sum over {i : v_i = w} of c_i. These are
/// exactly the terms of (Z_m, x+y-z) satisfying the condition.
[[nodiscard]] auto affine_satisfies(int modulus, const LoopCondition & c) -> std::optional<std::vector<int>>;

/// A term in "m" realising sum c_i x_i over affine_algebra(modulus); the
/// coefficients must sum to 1 mod modulus.
[[nodiscard]] auto affine_term(int modulus, const std::vector<int> & coefficients) -> Term;

/// Whether (Z_m, x+y-z) separates the bipartite conditions from the
/// non-bipartite loopless ones, using commutativity and the triangle as
/// representatives. Both are decided by the affine solver and, independently,
/// by satisfies_condition on the operation table.
struct SeparationAudit
{
    int modulus = 0;
    std::optional<std::vector<int>> commutative;
    std::optional<std::vector<int>> triangle;
    /// affine_term of each solution passes verify_witness.
    bool terms_verified = false;
    /// The table-based decisions match the affine solver.
    bool routes_agree = false;

    [[nodiscard]] auto separates() const -> bool { return triangle.has_value() && !commutative.has_value(); }
};

[[nodiscard]] auto audit_separation(int modulus) -> SeparationAudit;
[[nodiscard]] auto to_json(const SeparationAudit & audit) -> nlohmann::json;

} // namespace loopcond
