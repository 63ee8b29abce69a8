#include "loopcond/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "loopcond/error.hpp"

namespace loopcond {

namespace {

auto checked_power(std::size_t base, std::size_t exponent, std::size_t limit) -> std::optional<std::size_t>
{
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base)
            return std::nullopt;
        result *= base;
    }
    return result <= limit ? std::optional(result) : std::nullopt;
}

} // namespace

FiniteAlgebra::FiniteAlgebra(int size, std::vector<Operation> operations) :
    _size(size),
    _operations(std::move(operations))
{
    if (size < 1)
        throw InvalidArgument("an algebra needs a nonempty universe");
    std::set<std::string> names;
    for (const auto & op : _operations) {
        if (op.arity < 0)
            throw InvalidArgument("operation '" + op.name + "' has negative arity");
        if (!names.insert(op.name).second)
            throw InvalidArgument("duplicate operation name '" + op.name + "'");
        auto expected = checked_power(static_cast<std::size_t>(size), static_cast<std::size_t>(op.arity), std::size_t{1} << 32);
        if (!expected || op.table.size() != *expected)
            throw InvalidArgument("operation '" + op.name + "' table has " + std::to_string(op.table.size()) +
                " entries, expected size^arity");
        for (int x : op.table)
            if (x < 0 || x >= size)
                throw InvalidArgument("operation '" + op.name + "' table entry out of range");
    }
}

auto FiniteAlgebra::find(const std::string & name) const -> std::optional<std::size_t>
{
    for (std::size_t i = 0; i < _operations.size(); ++i)
        if (_operations[i].name == name)
            return i;
    return std::nullopt;
}

auto FiniteAlgebra::apply(std::size_t op, std::span<const int> args) const -> int
{
    const auto & operation = _operations[op];
    std::size_t index = 0;
    for (int x : args)
        index = index * _size + x;
    return operation.table[index];
}

auto affine_algebra(int modulus) -> FiniteAlgebra
{
    if (modulus < 2)
        throw InvalidArgument("affine algebra needs modulus >= 2");
    std::vector<int> table;
    for (int x = 0; x < modulus; ++x)
        for (int y = 0; y < modulus; ++y)
            for (int z = 0; z < modulus; ++z)
                table.push_back(((x + y - z) % modulus + modulus) % modulus);
    return FiniteAlgebra(modulus, {{"m", 3, std::move(table)}});
}

auto projection_algebra(int size) -> FiniteAlgebra
{
    std::vector<int> table;
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y)
            table.push_back(x);
    return FiniteAlgebra(size, {{"p", 2, std::move(table)}});
}

auto algebra_from_json(const nlohmann::json & j) -> FiniteAlgebra
{
    try {
        std::vector<Operation> ops;
        for (const auto & op : j.at("operations"))
            ops.push_back({op.at("name").get<std::string>(), op.at("arity").get<int>(), op.at("table").get<std::vector<int>>()});
        return FiniteAlgebra(j.at("size").get<int>(), std::move(ops));
    }
    catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("malformed algebra JSON: ") + e.what());
    }
}

auto to_json(const FiniteAlgebra & a) -> nlohmann::json
{
    auto ops = nlohmann::json::array();
    for (const auto & op : a.operations())
        ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", op.table}});
    return {{"size", a.size()}, {"operations", ops}};
}

auto Term::variable(int index) -> Term
{
    if (index < 0)
        throw BadTerm("negative variable index");
    return Term(std::make_shared<const Node>(Node{index, {}, {}}));
}

auto Term::apply(std::string op, std::vector<Term> args) -> Term
{
    return Term(std::make_shared<const Node>(Node{-1, std::move(op), std::move(args)}));
}

auto Term::is_variable() const -> bool
{
    return _node->variable >= 0;
}

auto Term::variable_index() const -> int
{
    return _node->variable;
}

auto Term::op() const -> const std::string &
{
    return _node->op;
}

auto Term::args() const -> const std::vector<Term> &
{
    return _node->args;
}

auto Term::to_string() const -> std::string
{
    if (is_variable())
        return "x" + std::to_string(variable_index());
    std::string out = op() + "(";
    for (std::size_t i = 0; i < args().size(); ++i) {
        if (i)
            out += ',';
        out += args()[i].to_string();
    }
    return out + ")";
}

auto decision_name(const Decision & d) -> std::string
{
    struct Visitor
    {
        auto operator()(const Satisfied &) const -> std::string { return "Satisfied"; }
        auto operator()(const NotSatisfied &) const -> std::string { return "NotSatisfied"; }
        auto operator()(const ResourceExceeded &) const -> std::string { return "ResourceExceeded"; }
    };
    return std::visit(Visitor{}, d);
}

namespace {

// Calls visit with each index tuple of length m over 0..newest that uses
// `newest`; stops when visit returns false.
void for_each_argument_tuple(std::size_t m, std::size_t newest,
    const std::function<bool(const std::vector<std::size_t> &)> & visit)
{
    // Tuples over 0..newest whose largest entry is `newest`: the first
    // occurrence of `newest` is at position p, earlier entries are < newest.
    std::vector<std::size_t> idx(m);
    for (std::size_t p = 0; p < m; ++p) {
        if (p > 0 && newest == 0)
            break;
        std::fill(idx.begin(), idx.end(), 0);
        idx[p] = newest;
        while (true) {
            if (!visit(idx))
                return;
            auto pos = static_cast<std::ptrdiff_t>(m) - 1;
            for (; pos >= 0; --pos) {
                auto at = static_cast<std::size_t>(pos);
                if (at == p)
                    continue;
                auto bound = at < p ? newest : newest + 1;
                if (++idx[at] < bound)
                    break;
                idx[at] = 0;
            }
            if (pos < 0)
                break;
        }
    }
}

} // namespace

auto is_compatible(const FiniteAlgebra & a, const Relation & r) -> bool
{
    if (r.universe_size() != a.size())
        throw UniverseMismatch("relation universe " + std::to_string(r.universe_size()) + " vs algebra size " +
            std::to_string(a.size()));
    std::vector<Tuple> elements(r.tuples().begin(), r.tuples().end());
    for (std::size_t op = 0; op < a.operations().size(); ++op) {
        auto m = static_cast<std::size_t>(a.operations()[op].arity);
        if (m == 0) {
            if (!r.contains(Tuple(r.arity(), a.operations()[op].table[0])))
                return false;
            continue;
        }
        std::vector<int> args(m);
        Tuple result(r.arity());
        bool closed = true;
        for (std::size_t newest = 0; newest < elements.size() && closed; ++newest)
            for_each_argument_tuple(m, newest, [&](const std::vector<std::size_t> & idx) {
                for (int c = 0; c < r.arity(); ++c) {
                    for (std::size_t j = 0; j < m; ++j)
                        args[j] = elements[idx[j]][c];
                    result[c] = a.apply(op, args);
                }
                closed = r.contains(result);
                return closed;
            });
        if (!closed)
            return false;
    }
    return true;
}

namespace {

struct TupleHash
{
    auto operator()(const Tuple & t) const noexcept -> std::size_t
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (int x : t) {
            h ^= static_cast<std::size_t>(x);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

// Worklist closure of `generators` under coordinatewise application of every
// operation. Stops early when `stop` accepts a new element.
struct Closure
{
    Subpower result;
    std::optional<std::size_t> hit;
};

auto close(const FiniteAlgebra & a, int length, const std::vector<Tuple> & generators, std::size_t cap,
    const std::function<bool(const Tuple &)> & stop) -> Closure
{
    Closure closure;
    auto & out = closure.result;
    out.arity = length;
    std::unordered_map<Tuple, std::size_t, TupleHash> index;

    // Returns false once the closure must end.
    auto add = [&](Tuple t, Provenance p) -> bool {
        if (index.contains(t))
            return true;
        if (out.elements.size() >= cap) {
            out.exceeded = true;
            return false;
        }
        index.emplace(t, out.elements.size());
        out.elements.push_back(std::move(t));
        out.provenance.push_back(std::move(p));
        if (stop && stop(out.elements.back())) {
            closure.hit = out.elements.size() - 1;
            return false;
        }
        return true;
    };

    for (std::size_t g = 0; g < generators.size(); ++g)
        if (!add(generators[g], {static_cast<int>(g), 0, {}}))
            return closure;
    for (std::size_t op = 0; op < a.operations().size(); ++op)
        if (a.operations()[op].arity == 0 && !add(Tuple(length, a.operations()[op].table[0]), {-1, op, {}}))
            return closure;

    bool running = true;
    for (std::size_t newest = 0; running && newest < out.elements.size(); ++newest)
        for (std::size_t op = 0; running && op < a.operations().size(); ++op) {
            auto m = static_cast<std::size_t>(a.operations()[op].arity);
            if (m == 0)
                continue;
            std::vector<int> args(m);
            for_each_argument_tuple(m, newest, [&](const std::vector<std::size_t> & idx) {
                Tuple t(length);
                for (int c = 0; c < length; ++c) {
                    for (std::size_t j = 0; j < m; ++j)
                        args[j] = out.elements[idx[j]][c];
                    t[c] = a.apply(op, args);
                }
                running = add(std::move(t), {-1, op, idx});
                return running;
            });
        }
    return closure;
}

auto build_term(const FiniteAlgebra & a, const Subpower & s, std::size_t index, const std::vector<Term> & generator_terms)
    -> Term
{
    // Parents always precede their children, so one forward pass suffices.
    std::vector<std::optional<Term>> terms(index + 1);
    std::vector<char> needed(index + 1, 0);
    needed[index] = 1;
    for (std::size_t i = index + 1; i-- > 0;)
        if (needed[i])
            for (auto p : s.provenance[i].parents)
                needed[p] = 1;
    for (std::size_t i = 0; i <= index; ++i) {
        if (!needed[i])
            continue;
        const auto & p = s.provenance[i];
        if (p.generator >= 0) {
            terms[i] = generator_terms[p.generator];
            continue;
        }
        std::vector<Term> args;
        for (auto parent : p.parents)
            args.push_back(*terms[parent]);
        terms[i] = Term::apply(a.operations()[p.op].name, std::move(args));
    }
    return *terms[index];
}

} // namespace

auto Subpower::relation(int universe_size) const -> Relation
{
    return Relation(universe_size, arity, std::set<Tuple>(elements.begin(), elements.end()));
}

auto Subpower::term(const FiniteAlgebra & a, std::size_t index) const -> Term
{
    if (index >= elements.size())
        throw InvalidArgument("subpower element index out of range");
    std::vector<Term> generator_terms;
    for (const auto & p : provenance)
        if (p.generator >= 0)
            generator_terms.resize(std::max<std::size_t>(generator_terms.size(), p.generator + 1), Term::variable(0));
    for (std::size_t g = 0; g < generator_terms.size(); ++g)
        generator_terms[g] = Term::variable(static_cast<int>(g));
    return build_term(a, *this, index, generator_terms);
}

auto generate_subpower(const FiniteAlgebra & a, int k, const std::vector<Tuple> & generators, std::size_t cap) -> Subpower
{
    if (k < 0)
        throw InvalidArgument("negative subpower arity");
    for (const auto & g : generators) {
        if (static_cast<int>(g.size()) != k)
            throw InvalidArgument("generator length does not match k");
        for (int x : g)
            if (x < 0 || x >= a.size())
                throw InvalidArgument("generator entry outside the universe");
    }
    return close(a, k, generators, cap, {}).result;
}

namespace {

// Value of variable `var` in row `row` of the free-algebra table, with the
// first variable most significant.
auto digit(std::size_t row, int var, int n, int size) -> int
{
    for (int i = n - 1; i > var; --i)
        row /= size;
    return static_cast<int>(row % size);
}

void check_term(const FiniteAlgebra & a, const Term & t, int arity)
{
    if (t.is_variable()) {
        if (t.variable_index() >= arity)
            throw BadTerm("variable x" + std::to_string(t.variable_index()) + " exceeds the condition's arity");
        return;
    }
    auto op = a.find(t.op());
    if (!op)
        throw BadTerm("unknown operation '" + t.op() + "'");
    if (static_cast<int>(t.args().size()) != a.operations()[*op].arity)
        throw BadTerm("operation '" + t.op() + "' applied to " + std::to_string(t.args().size()) + " arguments");
    for (const auto & arg : t.args())
        check_term(a, arg, arity);
}

// Evaluates t row by row, leaves given by `leaf`.
auto evaluate_rows(const FiniteAlgebra & a, const Term & t, const std::vector<std::vector<int>> & leaves, std::size_t rows)
    -> std::vector<int>
{
    std::unordered_map<const void *, std::vector<int>> memo;
    std::function<const std::vector<int> &(const Term &)> eval = [&](const Term & u) -> const std::vector<int> & {
        if (u.is_variable())
            return leaves[u.variable_index()];
        if (auto it = memo.find(u.id()); it != memo.end())
            return it->second;
        std::vector<const std::vector<int> *> children;
        for (const auto & arg : u.args())
            children.push_back(&eval(arg));
        auto op = *a.find(u.op());
        std::vector<int> values(rows), args(children.size());
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < children.size(); ++j)
                args[j] = (*children[j])[r];
            values[r] = a.apply(op, args);
        }
        return memo.emplace(u.id(), std::move(values)).first->second;
    };
    return eval(t);
}

} // namespace

auto find_counterexample(const FiniteAlgebra & a, const LoopCondition & c, const Term & t) -> std::optional<std::vector<int>>
{
    check_term(a, t, c.arity());
    int n = static_cast<int>(c.variables().size());
    auto rows = checked_power(a.size(), n, std::size_t{1} << 28);
    if (!rows)
        throw ExponentCap("too many assignments to check the witness");

    auto side = [&](const std::vector<int> & positions) {
        std::vector<std::vector<int>> leaves(c.arity(), std::vector<int>(*rows));
        for (int i = 0; i < c.arity(); ++i)
            for (std::size_t r = 0; r < *rows; ++r)
                leaves[i][r] = digit(r, positions[i], n, a.size());
        return evaluate_rows(a, t, leaves, *rows);
    };
    auto left = side(c.lhs_indices());
    auto right = side(c.rhs_indices());
    for (std::size_t r = 0; r < *rows; ++r)
        if (left[r] != right[r]) {
            std::vector<int> assignment(n);
            for (int v = 0; v < n; ++v)
                assignment[v] = digit(r, v, n, a.size());
            return assignment;
        }
    return std::nullopt;
}

auto verify_witness(const FiniteAlgebra & a, const LoopCondition & c, const Term & t) -> bool
{
    return !find_counterexample(a, c, t);
}

auto satisfies_condition(const FiniteAlgebra & a, const LoopCondition & c, const DecisionLimits & limits) -> Decision
{
    int n = static_cast<int>(c.variables().size());
    auto rows = checked_power(a.size(), n, limits.max_entries);
    if (!rows)
        throw ExponentCap(std::to_string(a.size()) + "^" + std::to_string(n) + " exceeds the table limit of " +
            std::to_string(limits.max_entries) + " entries");

    // A pair-table stores the first coordinate's table followed by the second's.
    auto graph = condition_graph(c);
    std::vector<Tuple> generators;
    std::vector<Term> generator_terms;
    for (auto [u, v] : graph.edges()) {
        Tuple pair(2 * *rows);
        for (std::size_t r = 0; r < *rows; ++r) {
            pair[r] = digit(r, u, n, a.size());
            pair[*rows + r] = digit(r, v, n, a.size());
        }
        generators.push_back(std::move(pair));
        int position = 0;
        while (c.lhs_indices()[position] != u || c.rhs_indices()[position] != v)
            ++position;
        generator_terms.push_back(Term::variable(position));
    }

    auto half = static_cast<std::ptrdiff_t>(*rows);
    auto diagonal = [half](const Tuple & t) { return std::equal(t.begin(), t.begin() + half, t.begin() + half); };
    auto closure = close(a, static_cast<int>(2 * *rows), generators, limits.max_elements, diagonal);

    if (closure.hit) {
        auto witness = build_term(a, closure.result, *closure.hit, generator_terms);
        if (!verify_witness(a, c, witness))
            throw std::logic_error("extracted witness term fails verification");
        return Satisfied{witness};
    }
    if (closure.result.exceeded)
        return ResourceExceeded{closure.result.elements.size()};
    return NotSatisfied{};
}

namespace {

auto mod(long long x, long long m) -> long long
{
    return ((x % m) + m) % m;
}

// g = s*a + t*b.
auto extended_gcd(long long a, long long b, long long & s, long long & t) -> long long
{
    if (b == 0) {
        s = 1;
        t = 0;
        return a;
    }
    long long s1, t1;
    auto g = extended_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

} // namespace

auto affine_satisfies(int modulus, const LoopCondition & c) -> std::optional<std::vector<int>>
{
    if (modulus < 2)
        throw InvalidArgument("modulus must be at least 2");
    const long long m = modulus;
    const int cols = c.arity();
    const int vars = static_cast<int>(c.variables().size());
    const int rows = vars + 1;

    // One balance equation per variable, then sum of coefficients = 1.
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
    std::vector<long long> b(rows, 0);
    for (int i = 0; i < cols; ++i) {
        a[c.lhs_indices()[i]][i] += 1;
        a[c.rhs_indices()[i]][i] -= 1;
        a[vars][i] = 1;
    }
    b[vars] = 1;
    for (auto & row : a)
        for (auto & x : row)
            x = mod(x, m);

    // Diagonalise with unimodular row and column operations over Z_m, so
    // that A = U^-1 D V^-1 and the system splits coordinatewise in z = V^-1 x.
    std::vector<std::vector<long long>> v(cols, std::vector<long long>(cols, 0));
    for (int i = 0; i < cols; ++i)
        v[i][i] = 1;

    auto row_combine = [&](int r1, int r2, long long p, long long q, long long s, long long t) {
        // (r1, r2) <- (p*r1 + q*r2, s*r1 + t*r2)
        for (int j = 0; j < cols; ++j) {
            auto x = a[r1][j], y = a[r2][j];
            a[r1][j] = mod(p * x + q * y, m);
            a[r2][j] = mod(s * x + t * y, m);
        }
        auto x = b[r1], y = b[r2];
        b[r1] = mod(p * x + q * y, m);
        b[r2] = mod(s * x + t * y, m);
    };
    auto col_combine = [&](int c1, int c2, long long p, long long q, long long s, long long t) {
        for (auto * mat : {&a, &v})
            for (auto & row : *mat) {
                auto x = row[c1], y = row[c2];
                row[c1] = mod(p * x + q * y, m);
                row[c2] = mod(s * x + t * y, m);
            }
    };

    int rank = 0;
    for (int t = 0; t < std::min(rows, cols); ++t) {
        int pr = -1, pc = -1;
        for (int i = t; i < rows && pr < 0; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0)
            break;
        std::swap(a[t], a[pr]);
        std::swap(b[t], b[pr]);
        if (pc != t)
            col_combine(t, pc, 0, 1, 1, 0);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                auto p = a[t][t], q = a[i][t];
                if (q % p == 0)
                    row_combine(t, i, 1, 0, m - q / p, 1);
                else {
                    long long s, u;
                    auto g = extended_gcd(p, q, s, u);
                    row_combine(t, i, s, u, -q / g, p / g);
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                auto p = a[t][t], q = a[t][j];
                if (q % p == 0)
                    col_combine(t, j, 1, 0, m - q / p, 1);
                else {
                    long long s, u;
                    auto g = extended_gcd(p, q, s, u);
                    col_combine(t, j, s, u, -q / g, p / g);
                    dirty = true;
                }
            }
        }
        ++rank;
    }

    std::vector<long long> z(cols, 0);
    for (int i = 0; i < rows; ++i) {
        if (i >= rank) {
            if (b[i] != 0)
                return std::nullopt;
            continue;
        }
        long long s, u;
        auto g = extended_gcd(a[i][i], m, s, u);
        if (b[i] % g != 0)
            return std::nullopt;
        auto reduced = m / g;
        z[i] = mod((b[i] / g) * mod(s, reduced), reduced);
    }

    std::vector<int> x(cols, 0);
    for (int i = 0; i < cols; ++i) {
        long long sum = 0;
        for (int j = 0; j < cols; ++j)
            sum = mod(sum + v[i][j] * z[j], m);
        x[i] = static_cast<int>(sum);
    }
    return x;
}

auto affine_term(int modulus, const std::vector<int> & coefficients) -> Term
{
    if (coefficients.empty())
        throw InvalidArgument("affine_term needs at least one coefficient");
    long long total = 0;
    for (int x : coefficients)
        total += x;
    if (mod(total, modulus) != 1)
        throw InvalidArgument("affine coefficients must sum to 1");
    // x0 + sum_{i>0} c_i (x_i - x0), each step one application of m(t, x_i, x0).
    auto term = Term::variable(0);
    for (std::size_t i = 1; i < coefficients.size(); ++i)
        for (long long r = 0; r < mod(coefficients[i], modulus); ++r)
            term = Term::apply("m", {term, Term::variable(static_cast<int>(i)), Term::variable(0)});
    return term;
}

auto audit_separation(int modulus) -> SeparationAudit
{
    SeparationAudit audit;
    audit.modulus = modulus;
    auto algebra = affine_algebra(modulus);
    auto commutativity = parse_condition("t(x,y)=t(y,x)");
    auto triangle = parse_condition("s(x,y,y,z,z,x)=s(y,x,z,y,x,z)");
    audit.commutative = affine_satisfies(modulus, commutativity);
    audit.triangle = affine_satisfies(modulus, triangle);

    audit.terms_verified = true;
    for (const auto & [solution, condition] : {std::pair(audit.commutative, commutativity), std::pair(audit.triangle, triangle)})
        if (solution && !verify_witness(algebra, condition, affine_term(modulus, *solution)))
            audit.terms_verified = false;

    auto agrees = [&](const LoopCondition & c, bool expected) {
        auto decision = satisfies_condition(algebra, c);
        if (std::holds_alternative<ResourceExceeded>(decision))
            return false;
        return std::holds_alternative<Satisfied>(decision) == expected;
    };
    audit.routes_agree = agrees(commutativity, audit.commutative.has_value()) && agrees(triangle, audit.triangle.has_value());
    return audit;
}

auto to_json(const SeparationAudit & audit) -> nlohmann::json
{
    auto solution = [&](const std::optional<std::vector<int>> & coefficients) -> nlohmann::json {
        if (!coefficients)
            return {{"satisfied", false}};
        return {{"satisfied", true}, {"coefficients", *coefficients},
            {"term", affine_term(audit.modulus, *coefficients).to_string()}};
    };
    return {{"modulus", audit.modulus}, {"commutativity", solution(audit.commutative)},
        {"triangle", solution(audit.triangle)}, {"terms_verified", audit.terms_verified},
        {"routes_agree", audit.routes_agree}, {"separates", audit.separates()}};
}

} // namespace loopcond
