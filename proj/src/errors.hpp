#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relaxssp {

// Base of every error thrown by the core. The C API maps each subclass to a
// status code, so new subclasses need a matching entry in capi.cpp.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown SSP(s,p) pair or malformed scheme name.
class CatalogError : public Error {
 public:
  using Error::Error;
};

// Inconsistent user parameters (CFL model, relaxation speed, problem data).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Grid too small for the reconstruction stencil, or degenerate extents.
class GridError : public Error {
 public:
  using Error::Error;
};

// A linear-analysis assumption did not hold (complex symbol, root finder
// failure, degenerate scheme).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON tableau or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced while evaluating the space operator or an RK
// stage. Carries enough context to locate the blow-up.
class DivergenceError : public Error {
 public:
  struct Where {
    std::ptrdiff_t index = -1;  // first offending cell, -1 if unknown
    int stage = -1;
    long step = -1;
    double time = -1.0;
    long grid_n = -1;
  };

  DivergenceError(const std::string& what, Where where)
      : Error(what), where_(where) {}

  const Where& where() const noexcept { return where_; }

 private:
  Where where_;
};

}  // namespace relaxssp
