#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brcycle {

enum class Errc {
  InvalidParams,
  NoValidLayering,
  InfeasibleSampling,
  OddVertexCount,
  VertexOutOfRange,
  IndexOutOfRange,
  RepeatedQuery,
  WrongModel,
  InvalidKnowledge,
  TooLarge,
  NotAForest,
  InvalidTreeHeight,
  Parse,
  InsufficientData,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace brcycle
