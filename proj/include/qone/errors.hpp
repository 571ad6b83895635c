#pragma once

#include <stdexcept>
#include <string>

namespace qone {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Carries the index of the offending factor (or lattice index) when known.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what, int index = -1) : Error(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class NoSeparatingLineError : public Error {
public:
    NoSeparatingLineError(const std::string& what, double left, double right)
        : Error(what), left_(left), right_(right) {}
    double left_max() const { return left_; }
    double right_min() const { return right_; }

private:
    double left_, right_;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class HigherOrderPoleError : public Error {
public:
    using Error::Error;
};

}  // namespace qone
