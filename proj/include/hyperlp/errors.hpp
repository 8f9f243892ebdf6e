#pragma once

#include <stdexcept>
#include <string>

namespace hyperlp {

// Enumeration or state storage would exceed a configured budget.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Random-walk mass reached zero before the requested horizon.
class walk_extinction_error : public std::runtime_error {
public:
    walk_extinction_error(const std::string& what, int step)
        : std::runtime_error(what), step_(step) {}
    int step() const noexcept { return step_; }

private:
    int step_;
};

class singular_matrix_error : public std::runtime_error {
public:
    explicit singular_matrix_error(const std::string& what) : std::runtime_error(what) {}
};

// An eigenvalue/linear solver failed to converge.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// A parameter combination at which a formula is undefined (e.g. p = 2q).
class singular_parameter_error : public std::invalid_argument {
public:
    explicit singular_parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hyperlp
