// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lbochner {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised by recip() when a coordinate is zero.
class ZeroDivisor : public Error {
public:
    ZeroDivisor(std::size_t coordinate)
        : Error("zero divisor at coordinate " + std::to_string(coordinate)),
          coordinate_(coordinate) {}
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    std::size_t coordinate_;
};

class NegativeCoordinate : public Error {
public:
    using Error::Error;
};

class SpaceMismatch : public Error {
public:
    using Error::Error;
};

class TooManyAtoms : public Error {
public:
    using Error::Error;
};

/// A null atom carries a nonzero value, so no density exists.
class NotAbsolutelyContinuous : public Error {
public:
    NotAbsolutelyContinuous(std::size_t atom, std::string name)
        : Error("measure is not absolutely continuous: null atom '" + name +
                "' has a nonzero value"),
          atom_(atom), name_(std::move(name)) {}
    std::size_t atom() const noexcept { return atom_; }
    const std::string& atom_name() const noexcept { return name_; }

private:
    std::size_t atom_;
    std::string name_;
};

/// ‖g_n(t)‖ ≤ h(t) or h(t) ≤ φ·unit failed.
class DominatorViolated : public Error {
public:
    DominatorViolated(std::size_t n, std::size_t atom, std::string what)
        : Error(std::move(what)), n_(n), atom_(atom) {}
    std::size_t n() const noexcept { return n_; }
    std::size_t atom() const noexcept { return atom_; }

private:
    std::size_t n_;
    std::size_t atom_;
};

/// An atom whose dual norm has a zero coordinate (the bootstrap divides by it).
class ZeroNorm : public Error {
public:
    ZeroNorm(std::size_t atom, std::size_t coordinate)
        : Error("zero norm at atom " + std::to_string(atom) + ", coordinate " +
                std::to_string(coordinate)),
          atom_(atom), coordinate_(coordinate) {}
    std::size_t atom() const noexcept { return atom_; }
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    std::size_t atom_;
    std::size_t coordinate_;
};

}  // namespace lbochner
