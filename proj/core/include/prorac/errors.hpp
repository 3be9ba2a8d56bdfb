#pragma once

#include <stdexcept>
#include <string>

namespace prorac {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidName : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

struct ValidationError : Error {
  using Error::Error;
};

struct UnknownSchema : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct TypeMismatch : Error {
  using Error::Error;
};

struct MissingTemplate : Error {
  using Error::Error;
};

struct ReasonerError : Error {
  using Error::Error;
};

struct ReplayMiss : Error {
  using Error::Error;
};

struct AnswerParseError : Error {
  using Error::Error;
};

struct StateParseError : Error {
  using Error::Error;
};

struct ExtractionParseError : Error {
  using Error::Error;
};

struct MockUnparseablePrompt : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct UnauditableInstance : Error {
  using Error::Error;
};

struct IncomparableRun : Error {
  using Error::Error;
};

}  // namespace prorac
