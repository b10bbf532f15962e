#pragma once

#include <stdexcept>
#include <string>

namespace topicmine {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVectorError : Error {
  explicit ZeroVectorError(const std::string& what) : Error(what) {}
};

struct BadKError : Error {
  explicit BadKError(const std::string& what) : Error(what) {}
};

struct LengthMismatchError : Error {
  explicit LengthMismatchError(const std::string& what) : Error(what) {}
};

struct ShapeMismatchError : Error {
  explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

struct AllDocumentsEmptyError : Error {
  explicit AllDocumentsEmptyError(const std::string& what) : Error(what) {}
};

struct EmptyTopicError : Error {
  explicit EmptyTopicError(const std::string& what) : Error(what) {}
};

struct ConvergenceFailureError : Error {
  explicit ConvergenceFailureError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Wraps any stage failure inside the pipeline with the stage name.
struct PipelineError : Error {
  std::string stage;
  PipelineError(std::string stage_name, const std::string& what)
      : Error(stage_name + ": " + what), stage(std::move(stage_name)) {}
};

}  // namespace topicmine
