#pragma once

#include <stdexcept>
#include <string>

namespace trigrid {

enum class ErrorKind {
  kInvalidCorner,
  kOutOfDomain,
  kInvalidArgument,
  kUnreachable,
  kMalformedPath,
  kUnexpectedTopology,
  kDegeneratePolygon,
  kInfiniteNeighbor,
  kParse,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace trigrid
