#ifndef FRECHET_ERRORS_HPP
#define FRECHET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frechet {

/// Two objects that must share a vertex count do not.
class size_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input violates a documented precondition (bad probability, empty sample, ...).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds an enumeration or memory cap.
class budget_error : public std::length_error {
public:
    using std::length_error::length_error;
};

}

#endif
