#ifndef POLYFLOW_ERRORS_HPP
#define POLYFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyflow {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands of a linear-algebra or LP operation have inconsistent dimensions.
class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// A point fell outside every region of the tiling.
class UncoveredPoint : public Error {
  public:
    explicit UncoveredPoint(const std::string& what) : Error(what) {}
};

/// An antisymmetry / cycle identity on boundary weights failed.
/// Carries the offending index tuple and the exact nonzero residual.
class ConservationViolated : public Error {
  public:
    ConservationViolated(const std::string& what, std::string residual)
        : Error(what), residual_(std::move(residual)) {}
    const std::string& residual() const { return residual_; }

  private:
    std::string residual_;
};

/// Consecutive path points lie in regions that are neither equal nor adjacent.
class NotJumpFree : public Error {
  public:
    NotJumpFree(const std::string& what, int from, int to)
        : Error(what), from_(from), to_(to) {}
    int from() const { return from_; }
    int to() const { return to_; }

  private:
    int from_;
    int to_;
};

/// Could not nudge a boundary sample into a region interior within budget.
class PerturbationFailed : public Error {
  public:
    explicit PerturbationFailed(const std::string& what) : Error(what) {}
};

/// Breakpoint count exceeded the configured cap during simulation.
class EventStorm : public Error {
  public:
    explicit EventStorm(const std::string& what) : Error(what) {}
};

/// The region/argmax correspondence failed at a concrete point.
class Lemma4Violated : public Error {
  public:
    explicit Lemma4Violated(const std::string& what) : Error(what) {}
};

/// Region-weight propagation requires a connected adjacency graph.
class DisconnectedAdjacency : public Error {
  public:
    explicit DisconnectedAdjacency(const std::string& what) : Error(what) {}
};

/// A sample class required to be nonempty is empty.
class EmptyClass : public Error {
  public:
    explicit EmptyClass(const std::string& what) : Error(what) {}
};

/// Every candidate piece was pruned while rebuilding a tiling.
class AllPiecesPruned : public Error {
  public:
    explicit AllPiecesPruned(const std::string& what) : Error(what) {}
};

/// Malformed input file or JSON document.
class SchemaError : public Error {
  public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

}  // namespace polyflow

#endif  // POLYFLOW_ERRORS_HPP
