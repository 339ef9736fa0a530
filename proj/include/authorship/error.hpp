#pragma once

#include <stdexcept>
#include <string>

namespace authorship {

// Bad input or configuration supplied by the user (CLI exit code 1).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value that should be impossible given validated inputs (CLI exit code 2).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A distance that has no defined value for the given pair of inputs,
// e.g. perplexity when the model and the test share no n-gram.
class UndefinedDistance : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace authorship
