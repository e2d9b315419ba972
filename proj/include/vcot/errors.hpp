// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between related containers.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed user-supplied data (dataset rows, annotation CSV, logprobs).
class InputError : public Error {
 public:
  using Error::Error;
};

class IngestionError : public Error {
 public:
  using Error::Error;
};

/// Transport failure that persisted through every retry.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

/// Backend answered, but the response violates the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Cosine of a zero vector.
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Focus extraction produced an empty string even after the retry.
class DegenerateFoveation : public Error {
 public:
  using Error::Error;
};

/// Tabulation over a filter that matched no records.
class EmptySliceError : public Error {
 public:
  using Error::Error;
};

/// Failure inside one gap of a sequence; carries the gap index.
class GapError : public Error {
 public:
  GapError(std::size_t gap_index, const std::string& what)
      : Error("gap " + std::to_string(gap_index) + ": " + what), gap_index_(gap_index) {}

  std::size_t gap_index() const noexcept { return gap_index_; }

 private:
  std::size_t gap_index_;
};

/// Failure of one downstream step; carries the original step index.
class StepError : public GenerationError {
 public:
  StepError(std::size_t step_index, const std::string& what)
      : GenerationError("step " + std::to_string(step_index) + ": " + what), step_index_(step_index) {}

  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace vcot
