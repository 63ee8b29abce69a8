#include "loopcond/identity.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "loopcond/error.hpp"

namespace loopcond {

LoopCondition::LoopCondition(std::string symbol, std::vector<std::string> lhs, std::string rhs_symbol,
    std::vector<std::string> rhs) :
    _symbol(std::move(symbol)),
    _lhs(std::move(lhs)),
    _rhs(std::move(rhs))
{
    if (_symbol != rhs_symbol)
        throw SymbolMismatch("function symbols differ: '" + _symbol + "' vs '" + rhs_symbol + "'");
    if (_lhs.size() != _rhs.size())
        throw ArityMismatch("argument counts differ: " + std::to_string(_lhs.size()) + " vs " + std::to_string(_rhs.size()));
    if (_lhs.empty())
        throw EmptyArgs("a loop condition needs at least one argument");

    std::map<std::string, int> index;
    auto intern = [&](const std::string & name) {
        auto [it, inserted] = index.emplace(name, static_cast<int>(_variables.size()));
        if (inserted)
            _variables.push_back(name);
        return it->second;
    };
    for (const auto & name : _lhs)
        _lhs_index.push_back(intern(name));
    for (const auto & name : _rhs)
        _rhs_index.push_back(intern(name));
}

LoopCondition::LoopCondition(std::string symbol, std::vector<std::string> lhs, std::vector<std::string> rhs) :
    LoopCondition(symbol, std::move(lhs), symbol, std::move(rhs))
{
}

namespace {

class Parser
{
public:
    explicit Parser(std::string_view text) :
        _text(text)
    {
    }

    struct Side
    {
        std::string symbol;
        std::vector<std::string> args;
    };

    auto side() -> Side
    {
        Side s;
        s.symbol = identifier("function symbol");
        expect('(');
        skip_space();
        if (peek() == ')') {
            ++_pos;
            return s;
        }
        while (true) {
            s.args.push_back(identifier("variable"));
            skip_space();
            if (peek() == ',') {
                ++_pos;
                continue;
            }
            expect(')');
            return s;
        }
    }

    void expect(char c)
    {
        skip_space();
        if (peek() != c)
            throw SyntaxError(std::string("expected '") + c + "'" + found(), _pos);
        ++_pos;
    }

    void finish()
    {
        skip_space();
        if (_pos != _text.size())
            throw SyntaxError("trailing input" + found(), _pos);
    }

private:
    auto peek() const -> char { return _pos < _text.size() ? _text[_pos] : '\0'; }

    void skip_space()
    {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
            ++_pos;
    }

    auto found() const -> std::string
    {
        if (_pos >= _text.size())
            return ", found end of input";
        return std::string(", found '") + _text[_pos] + "'";
    }

    auto identifier(const char * what) -> std::string
    {
        skip_space();
        auto start = _pos;
        while (_pos < _text.size() && (std::isalnum(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '_'))
            ++_pos;
        if (start == _pos)
            throw SyntaxError(std::string("expected ") + what + found(), _pos);
        return std::string(_text.substr(start, _pos - start));
    }

    std::string_view _text;
    std::size_t _pos = 0;
};

} // namespace

auto parse_condition(std::string_view text) -> LoopCondition
{
    Parser parser(text);
    auto lhs = parser.side();
    parser.expect('=');
    auto rhs = parser.side();
    parser.finish();
    return LoopCondition(std::move(lhs.symbol), std::move(lhs.args), std::move(rhs.symbol), std::move(rhs.args));
}

auto print_condition(const LoopCondition & c) -> std::string
{
    auto side = [&](const std::vector<std::string> & args) {
        std::string out = c.symbol() + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i)
                out += ',';
            out += args[i];
        }
        return out + ")";
    };
    return side(c.lhs()) + "=" + side(c.rhs());
}

auto condition_graph(const LoopCondition & c) -> DiGraph
{
    std::vector<DiGraph::Edge> edges;
    for (int i = 0; i < c.arity(); ++i)
        edges.emplace_back(c.lhs_indices()[i], c.rhs_indices()[i]);
    return DiGraph(static_cast<int>(c.variables().size()), std::move(edges), c.variables());
}

auto condition_from_graph(const DiGraph & g, std::string symbol) -> LoopCondition
{
    if (g.edge_count() == 0)
        throw InvalidArgument("a graph without edges has no loop condition");
    auto name = [&](int v) { return g.labels().empty() ? "v" + std::to_string(v) : g.labels()[v]; };
    std::vector<std::string> lhs, rhs;
    for (auto [a, b] : g.edges()) {
        lhs.push_back(name(a));
        rhs.push_back(name(b));
    }
    return LoopCondition(std::move(symbol), std::move(lhs), std::move(rhs));
}

} // namespace loopcond
