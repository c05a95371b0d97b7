#include "quadfold/errors.hpp"
#include "quadfold/vertex.hpp"

namespace quadfold {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidSectorAngles: return "InvalidSectorAngles";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::NotDrivable: return "NotDrivable";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::InvalidAngle: return "InvalidAngle";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::IncompatibleUnits: return "IncompatibleUnits";
    case ErrorCode::LayoutFailure: return "LayoutFailure";
    case ErrorCode::PropagationConflict: return "PropagationConflict";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::RigidityViolation: return "RigidityViolation";
    case ErrorCode::SerializationError: return "SerializationError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

const char* to_string(VertexCase c) {
  switch (c) {
    case VertexCase::AdjacentCollinear: return "AdjacentCollinear";
    case VertexCase::StraightLine: return "StraightLine";
    case VertexCase::DoubleCollinear: return "DoubleCollinear";
    case VertexCase::Generic: return "Generic";
    case VertexCase::Trivial: return "Trivial";
  }
  return "Unknown";
}

const char* to_string(BranchId b) {
  switch (b) {
    case BranchId::Branch1: return "1";
    case BranchId::Branch2: return "2";
    case BranchId::LineSegment1: return "line1";
    case BranchId::LineSegment2: return "line2";
  }
  return "?";
}

BranchId parse_branch(const std::string& s) {
  if (s == "1" || s == "Branch1") return BranchId::Branch1;
  if (s == "2" || s == "Branch2") return BranchId::Branch2;
  if (s == "line" || s == "line1" || s == "LineSegment1") return BranchId::LineSegment1;
  if (s == "line2" || s == "LineSegment2") return BranchId::LineSegment2;
  throw Error(ErrorCode::Usage, "unknown branch '" + s + "'");
}

}  // namespace quadfold
