#pragma once

#include <stdexcept>
#include <string>

namespace qdp {

enum class ErrorKind {
    invalid_argument,   // bad parameter value, contract violation
    shape_mismatch,     // tensor dimension disagreement
    schema,             // corpus/spec file structure violation
    unknown_relation,   // relation type name not one of the 16
    answer_offset,      // answer text does not match context at char_start
    io,                 // file not readable/writable
    parse,              // malformed JSON / binary format
    numeric,            // non-finite value where finite required
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qdp
