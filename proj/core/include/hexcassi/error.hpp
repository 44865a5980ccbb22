#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hexcassi {

// Precondition and dimension violations surface as std::invalid_argument;
// everything else that can fail at runtime derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed binary file. `offset` is the byte position where decoding stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace hexcassi
