#pragma once

#include <stdexcept>
#include <string>

namespace cocf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& token)
      : Error("unknown generator '" + token + "'") {}
};

class MalformedToken : public Error {
 public:
  explicit MalformedToken(const std::string& token)
      : Error("malformed token '" + token + "'") {}
};

class InvalidRay : public Error {
 public:
  InvalidRay(int ray, int n)
      : Error("invalid ray " + std::to_string(ray) + " for n = " + std::to_string(n)) {}
};

class RayCountMismatch : public Error {
 public:
  RayCountMismatch(int a, int b)
      : Error("ray count mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidIndex : public Error {
 public:
  InvalidIndex(int index, int rank)
      : Error("invalid generator index " + std::to_string(index) + " for rank " +
              std::to_string(rank)) {}
};

class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(const std::string& what) : Error("unknown input letter " + what) {}
};

class UnknownTerminal : public Error {
 public:
  explicit UnknownTerminal(const std::string& name)
      : Error("unknown terminal '" + name + "'") {}
};

class InvalidGenerators : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  explicit InvalidRank(int rank) : Error("invalid rank " + std::to_string(rank)) {}
};

class InvalidRayCount : public Error {
 public:
  explicit InvalidRayCount(int n) : Error("invalid ray count " + std::to_string(n)) {}
};

// Raised by the text readers; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace cocf
