#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

namespace rigidtori {

/// Domain error raised by any module. `name()` is the stable error identifier
/// (e.g. "NotRigid") and `witness()` carries whatever data demonstrates it.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message, nlohmann::json witness = nullptr)
      : std::runtime_error(name + ": " + message), name_(std::move(name)), witness_(std::move(witness)) {}

  const std::string& name() const { return name_; }
  const nlohmann::json& witness() const { return witness_; }

 private:
  std::string name_;
  nlohmann::json witness_;
};

/// Malformed or schema-violating input (as opposed to a mathematical failure).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rigidtori
