#pragma once

#include <stdexcept>
#include <string>

namespace coordlat {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied a value outside an operation's domain (bad rank,
// negative sequence entry, zero polynomial, malformed file, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A self-consistency check between two independent computations failed.
// Seeing one of these means a formula or table is wrong, not the input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace coordlat
