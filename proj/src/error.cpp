#include "loopcond/error.hpp"

namespace loopcond {

SyntaxError::SyntaxError(const std::string & message, std::size_t position) :
    Error("syntax error at offset " + std::to_string(position) + ": " + message),
    _position(position)
{
}

BudgetExceeded::BudgetExceeded(std::uint64_t budget) :
    Error("search budget of " + std::to_string(budget) + " node expansions exhausted"),
    _budget(budget)
{
}

} // namespace loopcond
