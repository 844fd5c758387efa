#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lopart {

// Raised for any input that violates a documented precondition: bad labels,
// non-finite data, negative penalties, malformed files. Callers map it to a
// validation failure (CLI exit code 2, HTTP 400).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what)
      : std::invalid_argument(what) {}
  InvalidInput(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}

  // 0-based index of the offending item (label, row) when there is one.
  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

}  // namespace lopart
