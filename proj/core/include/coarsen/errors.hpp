#pragma once

#include <stdexcept>
#include <string>

namespace coarsen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph construction rejected an edge (self-loop, duplicate, bad weight, bad id).
class InvalidGraphError : public Error {
 public:
  using Error::Error;
};

/// A graph or hierarchy file could not be read.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A partition does not cover the vertex range disjointly.
class InvalidPartitionError : public Error {
 public:
  using Error::Error;
};

/// A contraction set does not induce a connected subgraph.
class DisconnectedSetError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a connected graph received a disconnected one.
class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

class EigensolverError : public Error {
 public:
  using Error::Error;
};

/// Dense code paths refuse inputs above a fixed size.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace coarsen
