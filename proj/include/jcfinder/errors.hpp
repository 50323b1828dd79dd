#pragma once

#include <stdexcept>
#include <string>

namespace jcfinder {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntactically invalid Java source. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
  ParseError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), path(path), line(line) {}
  std::string path;
  int line;
};

struct EncodingError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct FormatVersionMismatch : Error {
  using Error::Error;
};

// Input manifest or configuration is malformed.
struct InvalidInput : Error {
  using Error::Error;
};

struct DegenerateClassPair : Error {
  using Error::Error;
};

}  // namespace jcfinder
