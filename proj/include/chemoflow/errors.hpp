#pragma once

#include <stdexcept>
#include <string>

namespace chemoflow {

// Base for every error raised by the library. Callers that only want to
// distinguish "our" failures from std ones can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric argument outside its admissible range (k < 1, a <= 0, b <= 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Field data that violates a precondition (non-finite, negative density, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

// Parameter tuple outside the hypotheses of the boundedness theorem.
class HypothesisError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class SnapshotError : public Error {
public:
    using Error::Error;
};

}  // namespace chemoflow
