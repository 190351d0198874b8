#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spav
{
    /// Base class for every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed text input (election, instance, witness, or reduction source files).
    class ParseError : public Error
    {
    public:
        ParseError(std::size_t line, const std::string & message) :
            Error("line " + std::to_string(line) + ": " + message),
            _line(line)
        {
        }

        auto line() const -> std::size_t { return _line; }

    private:
        std::size_t _line;
    };

    /// An exhaustive search hit its node budget before reaching a verdict.
    class BudgetExceeded : public Error
    {
    public:
        explicit BudgetExceeded(std::uint64_t budget) :
            Error("undecided: budget of " + std::to_string(budget) + " nodes exhausted"),
            _budget(budget)
        {
        }

        auto budget() const -> std::uint64_t { return _budget; }

    private:
        std::uint64_t _budget;
    };
}
