#pragma once

#include <stdexcept>
#include <string>

namespace hed {

// Base class for every invariant or precondition violation raised by the
// library. Messages always name the violated invariant so callers can
// surface them verbatim.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyPreOnsetWindow : Error {
  explicit EmptyPreOnsetWindow(const std::string& w) : Error(w) {}
};

struct DegenerateWindow : Error {
  explicit DegenerateWindow(const std::string& w) : Error(w) {}
};

struct InvalidProbability : Error {
  explicit InvalidProbability(const std::string& w) : Error(w) {}
};

struct InvalidTimeGrid : Error {
  explicit InvalidTimeGrid(const std::string& w) : Error(w) {}
};

struct NonPositiveDecay : Error {
  explicit NonPositiveDecay(const std::string& w) : Error(w) {}
};

struct NonPositiveBudget : Error {
  explicit NonPositiveBudget(const std::string& w) : Error(w) {}
};

struct NonPositiveBeta : Error {
  explicit NonPositiveBeta(const std::string& w) : Error(w) {}
};

struct InvalidPartition : Error {
  explicit InvalidPartition(const std::string& w) : Error(w) {}
};

struct NoTransitions : Error {
  explicit NoTransitions(const std::string& w) : Error(w) {}
};

struct WindowTooShort : Error {
  explicit WindowTooShort(const std::string& w) : Error(w) {}
};

struct BlockTooLong : Error {
  explicit BlockTooLong(const std::string& w) : Error(w) {}
};

struct MismatchedWindows : Error {
  explicit MismatchedWindows(const std::string& w) : Error(w) {}
};

struct EmptyCurve : Error {
  explicit EmptyCurve(const std::string& w) : Error(w) {}
};

struct DelayExceedsWindow : Error {
  explicit DelayExceedsWindow(const std::string& w) : Error(w) {}
};

struct EmbeddingFailure : Error {
  explicit EmbeddingFailure(const std::string& w) : Error(w) {}
};

struct ZeroLikelihood : Error {
  explicit ZeroLikelihood(const std::string& w) : Error(w) {}
};

// Catch-all for malformed parameter structs (non-stochastic matrices,
// negative variances, unknown detector names, ...).
struct InvalidParams : Error {
  explicit InvalidParams(const std::string& w) : Error(w) {}
};

}  // namespace hed
