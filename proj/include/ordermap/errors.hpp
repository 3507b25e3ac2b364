#pragma once

#include <stdexcept>
#include <string>

namespace ordermap {

/// Malformed arguments: overlapping statement sets, unknown variables, non-cliques.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value that violates its own invariants (boundary containing a successor, empty data).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An operator refused to run because it would lose represented independencies.
class RejectedOperation : public std::runtime_error {
public:
    RejectedOperation(const std::string& what, int tail, int head)
        : std::runtime_error(what), tail_(tail), head_(head) {}

    int tail() const noexcept { return tail_; }
    int head() const noexcept { return head_; }

private:
    int tail_;
    int head_;
};

/// Unclique permutation budget exhausted.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration requested beyond its configured node cap.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace ordermap
