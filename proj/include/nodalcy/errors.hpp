#pragma once

#include <stdexcept>
#include <string>

namespace nodalcy {

// Every failure the library reports deliberately carries one of these codes,
// so the CLI can emit machine-readable error objects.
enum class errc {
    order_mismatch,
    division_by_zero,
    bad_prime,
    bad_root,
    arity_mismatch,
    index_out_of_range,
    chart_not_valid,
    unsupported_dimension,
    dimension_mismatch,
    invalid_dimension,
    schema_error,
    degree_mismatch,
    not_a_node,
    not_ordinary,
    duplicate_node,
    out_of_budget,
    unknown_command,
    invalid_flag,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::order_mismatch: return "OrderMismatch";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::bad_prime: return "BadPrime";
        case errc::bad_root: return "BadRoot";
        case errc::arity_mismatch: return "ArityMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::chart_not_valid: return "ChartNotValid";
        case errc::unsupported_dimension: return "UnsupportedDimension";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::invalid_dimension: return "InvalidDimension";
        case errc::schema_error: return "SchemaError";
        case errc::degree_mismatch: return "DegreeMismatch";
        case errc::not_a_node: return "NotANode";
        case errc::not_ordinary: return "NotOrdinary";
        case errc::duplicate_node: return "DuplicateNode";
        case errc::out_of_budget: return "OutOfBudget";
        case errc::unknown_command: return "UnknownCommand";
        case errc::invalid_flag: return "InvalidFlag";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code), message_(message) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }
    const std::string& message() const noexcept { return message_; }

  private:
    errc code_;
    std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw Error(code, message); }

}  // namespace nodalcy
