#pragma once

#include <stdexcept>
#include <string>

namespace qcrw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCRW_ERROR(Name)                  \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

QCRW_ERROR(ArityMismatch)
QCRW_ERROR(FlavorMismatch)
QCRW_ERROR(ArityError)
QCRW_ERROR(DimensionCap)
QCRW_ERROR(DimensionMismatch)
QCRW_ERROR(RangeError)
QCRW_ERROR(NotUnitary)
QCRW_ERROR(UnsupportedBase)
QCRW_ERROR(StaleMatch)
QCRW_ERROR(NotPowerOfTwoModes)
QCRW_ERROR(UnknownRule)

#undef QCRW_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_, col_;
};

class SoundnessViolation : public Error {
 public:
  SoundnessViolation(const std::string& rule, const std::string& detail, double deviation)
      : Error("soundness violation in " + rule + ": " + detail), rule_(rule), deviation_(deviation) {}
  const std::string& rule() const { return rule_; }
  double deviation() const { return deviation_; }

 private:
  std::string rule_;
  double deviation_;
};

}  // namespace qcrw
