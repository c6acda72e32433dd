#pragma once

#include <stdexcept>
#include <string>

namespace ghelab {

/// An element whose encoding violates the bounds of its group family.
class MalformedElementError : public std::invalid_argument {
 public:
  explicit MalformedElementError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A subgroup closure grew past the configured desk-scale cap.
class ClosureOverflowError : public std::runtime_error {
 public:
  explicit ClosureOverflowError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An operation parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Two objects that must live over the same group do not.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A problem instance cannot be formed (e.g. trivial plaintext group).
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A game transcript is invalid (e.g. an adversary picked equal messages).
class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ghelab
