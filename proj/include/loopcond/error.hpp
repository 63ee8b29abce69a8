#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopcond {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

// identity
class SyntaxError : public Error
{
public:
    SyntaxError(const std::string & message, std::size_t position);

    [[nodiscard]] auto position() const noexcept -> std::size_t { return _position; }

private:
    std::size_t _position;
};

class SymbolMismatch : public Error { public: using Error::Error; };
class ArityMismatch : public Error { public: using Error::Error; };
class EmptyArgs : public Error { public: using Error::Error; };

// graph
class NotSymmetric : public Error { public: using Error::Error; };
class NotWeaklyConnected : public Error { public: using Error::Error; };

/// A search ran out of its node-expansion budget before reaching an answer.
class BudgetExceeded : public Error
{
public:
    explicit BudgetExceeded(std::uint64_t budget);

    [[nodiscard]] auto budget() const noexcept -> std::uint64_t { return _budget; }

private:
    std::uint64_t _budget;
};

// ppdef
class SlotMismatch : public Error { public: using Error::Error; };
class ArityNotDivisible : public Error { public: using Error::Error; };

// constructions
class SizeCap : public Error { public: using Error::Error; };

// algebra
class UniverseMismatch : public Error { public: using Error::Error; };
class ExponentCap : public Error { public: using Error::Error; };
class BadTerm : public Error { public: using Error::Error; };

} // namespace loopcond
