#pragma once

#include <stdexcept>
#include <string>

namespace webgeom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WEBGEOM_ERROR(Name)          \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

WEBGEOM_ERROR(InvalidArgument);
WEBGEOM_ERROR(DivisionByZero);
WEBGEOM_ERROR(DomainError);
WEBGEOM_ERROR(ExactUnsupported);
WEBGEOM_ERROR(Inconsistent);
WEBGEOM_ERROR(Singular);
WEBGEOM_ERROR(NonSquare);
WEBGEOM_ERROR(WrongCodimension);
WEBGEOM_ERROR(NotDivisible);
WEBGEOM_ERROR(NotCalibrated);
WEBGEOM_ERROR(NotOrdinary);
WEBGEOM_ERROR(TranscendentalUnsupported);
WEBGEOM_ERROR(TemplateMismatch);
WEBGEOM_ERROR(PointSelectionFailed);
WEBGEOM_ERROR(CompositionDomainError);

#undef WEBGEOM_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        message_(msg),
        line_(line),
        column_(column) {}
  // The message without the position suffix.
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

}  // namespace webgeom
