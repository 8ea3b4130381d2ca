#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccqbf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CCQBF_DEFINE_ERROR(Name)                 \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

CCQBF_DEFINE_ERROR(DomainError);
CCQBF_DEFINE_ERROR(ClassError);
CCQBF_DEFINE_ERROR(StateError);
CCQBF_DEFINE_ERROR(ArityError);
CCQBF_DEFINE_ERROR(IndexError);
CCQBF_DEFINE_ERROR(MissingVarError);
CCQBF_DEFINE_ERROR(QuantifierError);
CCQBF_DEFINE_ERROR(InnermostError);
CCQBF_DEFINE_ERROR(PreconditionError);
CCQBF_DEFINE_ERROR(CapError);
CCQBF_DEFINE_ERROR(ShapeError);
CCQBF_DEFINE_ERROR(GraphError);
CCQBF_DEFINE_ERROR(ParamError);
CCQBF_DEFINE_ERROR(UnknownTag);
CCQBF_DEFINE_ERROR(InternalError);
CCQBF_DEFINE_ERROR(IOError);

#undef CCQBF_DEFINE_ERROR

/// Malformed input text. Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) +
                (column ? ", column " + std::to_string(column) : std::string{}) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace ccqbf
