#ifndef IVBS_ERROR_HPP
#define IVBS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ivbs {

// Raised for malformed inputs: bad frames, duplicate focal elements,
// infeasible parameters, out-of-range indices.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ingestion error carrying a 1-based line number (0 when not line-bound).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ivbs

#endif
