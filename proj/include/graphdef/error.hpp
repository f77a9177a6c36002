#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphdef {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a graph/relation file, an expression or a query text.
/// `position` is a byte offset into the offending text when known.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A configured search budget was exceeded before a decision was reached.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace graphdef
