#pragma once

#include <stdexcept>
#include <string>

namespace kcnf {

enum class Errc {
    MalformedHeader,
    VariableOutOfRange,
    NonUniformWidth,
    ClauseCountMismatch,
    InvalidDimensions,
    SNotUnassigned,
    VariableNotUntouched,
    ComponentTooLarge,
    UnsatisfiableComponent,
    LocalUniformityViolated,
    InvalidSlack,
    DeltaNotPositive,
    DegenerateMarginal,
    UnsupportedMode,
    TooLarge,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace kcnf
