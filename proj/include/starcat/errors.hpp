#pragma once

#include <stdexcept>
#include <string>

namespace starcat {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input text (group spec, Cayley document, ell spec, ...) failed to parse.
struct parse_error : error {
  explicit parse_error(const std::string& what) : error(what) {}
};

// A specialization point was asked to evaluate 1/0.
struct vanishing_denominator : error {
  explicit vanishing_denominator(const std::string& what) : error(what) {}
};

// A specialization point does not cover a variable of the scalar.
struct missing_variable : error {
  explicit missing_variable(const std::string& what) : error(what) {}
};

}  // namespace starcat
