#pragma once

#include <stdexcept>
#include <string>

namespace mdl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// A predictor was queried at a history whose defining quantity vanishes.
class ZeroHistory : public Error {
 public:
  using Error::Error;
};

// The unmaterialized tail of an infinite class might contain the maximizer.
class IndeterminateTail : public Error {
 public:
  using Error::Error;
};

// Exact enumeration would exceed the node budget.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotAMeasure : public Error {
 public:
  using Error::Error;
};

class AllZero : public Error {
 public:
  using Error::Error;
};

class ZeroProbability : public Error {
 public:
  using Error::Error;
};

class MalformedCode : public Error {
 public:
  using Error::Error;
};

class DegenerateLikelihood : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdl
