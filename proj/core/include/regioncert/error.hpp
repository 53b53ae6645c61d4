#pragma once

#include <stdexcept>
#include <string>

namespace regioncert {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

// A constructive routine was called on data that does not meet its
// hypotheses (e.g. a negative entry where non-negativity is required).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A synthesis request that no network can satisfy.
class Infeasible : public Error {
public:
    using Error::Error;
};

}  // namespace regioncert
