// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace isaclab {

/// Base class for all isaclab errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or malformed input (bad JSON, broken invariants).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// User channel numerically parallel to the target steering vector.
class DegenerateChannel : public Error {
public:
    explicit DegenerateChannel(const std::string& msg) : Error(msg) {}
};

/// Steering derivative vanishes (angle at +-pi/2).
class DegenerateSteering : public Error {
public:
    explicit DegenerateSteering(const std::string& msg) : Error(msg) {}
};

/// Fisher information is singular; the CRB is unbounded.
class SingularFim : public Error {
public:
    explicit SingularFim(const std::string& msg) : Error(msg) {}
};

/// No transmit energy reaches the direction the estimator relies on.
class ZeroIllumination : public Error {
public:
    explicit ZeroIllumination(const std::string& msg) : Error(msg) {}
};

/// A quadrature routine hit its evaluation cap above tolerance.
class NonConvergent : public Error {
public:
    explicit NonConvergent(const std::string& msg) : Error(msg) {}
};

} // namespace isaclab
