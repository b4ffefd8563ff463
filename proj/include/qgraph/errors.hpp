#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base of every error raised by the library. Each subclass names one
/// failure mode so callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define QGRAPH_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
      public:                                                                  \
        using Error::Error;                                                    \
    }

QGRAPH_DEFINE_ERROR(SingularMatrix);
QGRAPH_DEFINE_ERROR(DimensionMismatch);
QGRAPH_DEFINE_ERROR(NonFiniteInput);
QGRAPH_DEFINE_ERROR(InvalidBoundaryCondition);
QGRAPH_DEFINE_ERROR(InvalidParameters);
QGRAPH_DEFINE_ERROR(InvalidGraph);
QGRAPH_DEFINE_ERROR(UnknownEdge);
QGRAPH_DEFINE_ERROR(NotACut);
QGRAPH_DEFINE_ERROR(NonpositiveEnergy);
QGRAPH_DEFINE_ERROR(NoExternalLines);
QGRAPH_DEFINE_ERROR(BadWindow);
QGRAPH_DEFINE_ERROR(NotAnEigenvalue);
QGRAPH_DEFINE_ERROR(OutOfDomain);
QGRAPH_DEFINE_ERROR(InvalidOperands);
QGRAPH_DEFINE_ERROR(ParseError);

#undef QGRAPH_DEFINE_ERROR

class ConditionAViolated : public Error {
  public:
    ConditionAViolated(const std::string& what, double margin)
        : Error(what), margin_(margin) {}

    double margin() const noexcept { return margin_; }

  private:
    double margin_;
};

} // namespace qgraph
