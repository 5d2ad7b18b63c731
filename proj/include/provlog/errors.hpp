#pragma once

#include <stdexcept>
#include <string>

namespace provlog {

// Base for every library failure. `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define PROVLOG_ERROR(Name)                                              \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
  };

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& msg)
      : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(col) +
                                 ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_, col_;
};

PROVLOG_ERROR(ArityError)
PROVLOG_ERROR(HeadVariableError)
PROVLOG_ERROR(ZeroAnnotationError)
PROVLOG_ERROR(DuplicateFactError)
PROVLOG_ERROR(SizeLimitError)
PROVLOG_ERROR(AxiomViolation)
PROVLOG_ERROR(MalformedSpec)
PROVLOG_ERROR(UnboundVariable)
PROVLOG_ERROR(InfiniteCoefficientInNonContinuousTarget)
PROVLOG_ERROR(DepthCapRequired)
PROVLOG_ERROR(UnannotatedLeaf)
PROVLOG_ERROR(SemiringMismatch)
PROVLOG_ERROR(DivergenceError)
PROVLOG_ERROR(UnsupportedSemiring)
PROVLOG_ERROR(TermExplosion)
PROVLOG_ERROR(NotEntailed)
PROVLOG_ERROR(InapplicableSemiring)
PROVLOG_ERROR(MatrixMismatch)
PROVLOG_ERROR(ValueParseError)

#undef PROVLOG_ERROR

}  // namespace provlog
