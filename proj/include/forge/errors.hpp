#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A polyomino path visits the same lattice cell twice.
class OverlapError : public Error {
 public:
  using Error::Error;
};

/// A cut line misses the polygon, touches it only on the boundary, or would
/// split one side into several components.
class DegenerateCut : public Error {
 public:
  using Error::Error;
};

/// A rejection-sampling loop hit its attempt cap.
class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

/// A solver could not isolate exactly one answer.
class AmbiguousProblem : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CorruptManifest : public Error {
 public:
  using Error::Error;
};

class MissingImage : public Error {
 public:
  explicit MissingImage(const std::string& path)
      : Error("missing image: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (bad levels, ratios, sizes ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace forge
