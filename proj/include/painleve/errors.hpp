#pragma once

#include <stdexcept>
#include <string>

namespace painleve {

/// Base class for every numerical failure raised by the library.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gamma-type function was evaluated at one of its poles.
class pole_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// A series or lattice sum did not meet its stopping rule.
class nonconvergence_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Parameters sit on (or too close to) a non-generic locus, e.g. 2*sigma in Z.
class degenerate_parameter_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

}  // namespace painleve
