#pragma once

#include <stdexcept>
#include <string>

namespace starq {

// Thrown when two values built for different chart dimensions are combined.
struct dimension_mismatch : std::invalid_argument {
    explicit dimension_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a variable index lies outside 1..n.
struct index_error : std::out_of_range {
    explicit index_error(const std::string& what) : std::out_of_range(what) {}
};

// A diagonal operator was applied to a graded component on which one of its
// denominator factors (E + root) vanishes. Carries the offending xi-degree
// and the root of the vanishing factor.
struct singular_component : std::domain_error {
    singular_component(int degree_, std::string root_str, const std::string& what)
        : std::domain_error(what), degree(degree_), root(std::move(root_str)) {}
    int degree;
    std::string root;
};

// Conversion to a differential operator was requested for an operator that
// still has denominator factors.
struct not_polynomial : std::domain_error {
    explicit not_polynomial(const std::string& what) : std::domain_error(what) {}
};

struct parse_error : std::runtime_error {
    parse_error(std::size_t position_, const std::string& what)
        : std::runtime_error(what), position(position_) {}
    std::size_t position;
};

} // namespace starq
