#pragma once

#include <stdexcept>
#include <string>

namespace ssp {

// Bad arguments or configuration (CLI exit code 2).
class param_error : public std::invalid_argument {
public:
    explicit param_error(const std::string& what) : std::invalid_argument(what) {}
};

// Unreadable or malformed input data (CLI exit code 3).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ssp
