#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalefilt {

/// Base class for all library errors. Carries a short machine-readable
/// code alongside the human-readable message.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Invalid parameters, malformed inputs, contract violations. CLI exit 2.
class validation_error : public error {
public:
    explicit validation_error(const std::string& message, std::string code = "invalid_argument")
        : error(std::move(code), message) {}
};

class parse_error : public validation_error {
public:
    parse_error(const std::string& message, std::size_t line)
        : validation_error(message + " (line " + std::to_string(line) + ")", "parse"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical failures: divergent integrals, inadmissible filters,
/// bad contours. CLI exit 3.
class numeric_error : public error {
public:
    numeric_error(std::string code, const std::string& message)
        : error(std::move(code), message) {}
};

class admissibility_error : public numeric_error {
public:
    explicit admissibility_error(const std::string& message)
        : numeric_error("admissibility", message) {}
};

class divergence_error : public numeric_error {
public:
    enum class End { low, high };
    divergence_error(const std::string& message, End end)
        : numeric_error("divergence", message), end_(end) {}
    End end() const noexcept { return end_; }

private:
    End end_;
};

class contour_error : public numeric_error {
public:
    explicit contour_error(const std::string& message)
        : numeric_error("contour", message) {}
};

class truncation_error : public numeric_error {
public:
    explicit truncation_error(const std::string& message)
        : numeric_error("truncation", message) {}
};

} // namespace scalefilt
