#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gecmf {

/// Root of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edit does not fit the sentence it is applied to.
class StructuralError : public Error {
 public:
  StructuralError(std::size_t edit_index, const std::string& what)
      : Error("edit #" + std::to_string(edit_index) + ": " + what),
        edit_index_(edit_index) {}
  std::size_t edit_index() const { return edit_index_; }

 private:
  std::size_t edit_index_;
};

/// Malformed M2 input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Domain invariant violated (overlapping edits, bad tokens, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid option combination (missing segmenter, beta <= 0, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Deletion residuals are applied directly and never masked.
class DeletionResidualError : public Error {
 public:
  using Error::Error;
};

/// A masking-only operation was called on a deletion, or vice versa.
class ResidualKindError : public Error {
 public:
  using Error::Error;
};

/// Subword pieces that cannot be merged into tokens.
class MergeError : public Error {
 public:
  using Error::Error;
};

/// Requested candidate rank is deeper than what a mask offers.
class RankError : public Error {
 public:
  RankError(std::size_t mask_index, const std::string& what)
      : Error("mask " + std::to_string(mask_index) + ": " + what),
        mask_index_(mask_index) {}
  std::size_t mask_index() const { return mask_index_; }

 private:
  std::size_t mask_index_;
};

/// Connection, timeout or server-unavailable failure. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// The server answered with something that breaks the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure with the id of the instance being processed.
class InstanceError : public Error {
 public:
  InstanceError(std::string instance_id, const std::string& what)
      : Error("instance " + instance_id + ": " + what),
        instance_id_(std::move(instance_id)) {}
  const std::string& instance_id() const { return instance_id_; }

 private:
  std::string instance_id_;
};

}  // namespace gecmf
