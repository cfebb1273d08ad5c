#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "bjortho/types.hpp"

namespace bjortho {

/// Base error. `code` is a short stable identifier the CLI emits in its
/// machine-parsable one-line error format.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error("dim_mismatch", msg) {}
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& msg) : Error("bad_spec", msg) {}
};

/// A one-sided derivative gap above threshold was detected where a unique
/// differential was required. Carries the probe direction that exposed it.
class NonSmoothPoint : public Error {
 public:
  NonSmoothPoint(const std::string& msg, Vec witness, double gap)
      : Error("nonsmooth_point", msg), witness_direction(std::move(witness)), gap(gap) {}
  Vec witness_direction;
  double gap;
};

class UnsupportedOp : public Error {
 public:
  explicit UnsupportedOp(const std::string& msg) : Error("unsupported", msg) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& msg) : Error("degenerate", msg) {}
};

/// A bracketing search did not find a sign change; carries the bracket tried.
class SearchFailed : public Error {
 public:
  SearchFailed(const std::string& msg, double lo, double hi)
      : Error("search_failed", msg), bracket_lo(lo), bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& msg) : Error("overflow", msg) {}
};

}  // namespace bjortho
