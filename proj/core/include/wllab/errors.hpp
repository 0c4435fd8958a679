#pragma once

#include <stdexcept>
#include <string>

namespace wllab {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed one of the configured resource caps.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// The similarity search exhausted all of its exact strategies.
class SimilarityUndecided : public Error {
 public:
  using Error::Error;
};

// An arc partition violates one of the rainbow conditions.
class NotRainbow : public Error {
 public:
  using Error::Error;
};

// A partition fails invariance, consistency or the equality-pattern condition.
class NotGraphLike : public Error {
 public:
  using Error::Error;
};

// A spanning set does not generate an algebra closed under the required
// products, or the 0-1 indicators fall outside its span.
class ClosureViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wllab
