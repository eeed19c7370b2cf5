#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "delzant/lattice.hpp"

namespace delzant {

enum class ErrorCode {
  ZeroVector,
  ShapeMismatch,
  NotPrimitive,
  NotUnimodular,
  Unbounded,
  Empty,
  NotFullDim,
  NotAVertex,
  NoIntersection,
  NotParallel,
  NotStrictParallel,
  EmptyInterval,
  OutsidePolytope,
  TrivialCut,
  NonDelzantCut,
  SliceMismatch,
  NonConvexUnion,
  NonDelzantGlue,
  InvalidWeight,
  InvalidGraph,
  InvalidBPolytope,
  BadCutLevel,
  DecompositionFailure,
  UnsupportedLoop,
  NotGeneric,
  DuplicateCriticalValue,
  UnsupportedDimension,
  ParseError,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this exception. The optional
// fields carry the witness data that the CLI surfaces verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  std::optional<RatVec> vertex;
  std::optional<Integer> determinant;
  std::optional<IntVec> direction;
  std::optional<std::string> pointer;
  std::optional<std::size_t> line;
  std::optional<std::size_t> column;

 private:
  ErrorCode code_;
};

}  // namespace delzant
