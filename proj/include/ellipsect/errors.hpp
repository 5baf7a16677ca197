#pragma once

#include <stdexcept>
#include <string>

namespace ellipsect {

enum class Err {
  PARALLEL_PLANES,
  DEGENERATE_RESTRICTION,
  NO_BRACKET,
  NOT_INTERIOR,
  PARSE_ERROR,
  NOT_FOUND,
  NO_INTERSECTION,
  RANK_DEFICIENT,
  NOT_AN_ELLIPSE,
  EDGE_POINT,
  DIRECTIONS_NOT_DISTINCT,
  CENTER_OUTSIDE,
  NO_INTERIOR,
  NOT_ELLIPSOID_VERDICT,
  INVALID_ARGUMENT,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::PARALLEL_PLANES: return "PARALLEL_PLANES";
    case Err::DEGENERATE_RESTRICTION: return "DEGENERATE_RESTRICTION";
    case Err::NO_BRACKET: return "NO_BRACKET";
    case Err::NOT_INTERIOR: return "NOT_INTERIOR";
    case Err::PARSE_ERROR: return "PARSE_ERROR";
    case Err::NOT_FOUND: return "NOT_FOUND";
    case Err::NO_INTERSECTION: return "NO_INTERSECTION";
    case Err::RANK_DEFICIENT: return "RANK_DEFICIENT";
    case Err::NOT_AN_ELLIPSE: return "NOT_AN_ELLIPSE";
    case Err::EDGE_POINT: return "EDGE_POINT";
    case Err::DIRECTIONS_NOT_DISTINCT: return "DIRECTIONS_NOT_DISTINCT";
    case Err::CENTER_OUTSIDE: return "CENTER_OUTSIDE";
    case Err::NO_INTERIOR: return "NO_INTERIOR";
    case Err::NOT_ELLIPSOID_VERDICT: return "NOT_ELLIPSOID_VERDICT";
    case Err::INVALID_ARGUMENT: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

/// Library error with a machine-readable code and a human-readable detail.
class GeomError : public std::runtime_error {
 public:
  GeomError(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& detail) {
  throw GeomError(code, detail);
}

}  // namespace ellipsect
