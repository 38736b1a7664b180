#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hts {

enum class ErrorCode {
  InvalidArgument,
  // mesh_core
  NotRegular,
  DanglingSegment,
  Overlap,
  // hierarchy
  DegenerateRegion,
  AlreadySubdivided,
  StaleAddress,
  // conformality
  DegenerateKnots,
  NotConformal,
  NotInterior,
  // dimension
  NegativeResult,
  NotInClass,
  // basis
  NoParentSubdomain,
  UnlabeledEdge,
  UnhandledConfiguration,
  // cli_io
  SyntaxError,
  SemanticError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hts
