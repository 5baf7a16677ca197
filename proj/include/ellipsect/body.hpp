#pragma once

// Convex bodies as smooth implicit fields (negative inside) with an optional
// per-coordinate box clamp, a designated interior point, and boundary
// queries by ray bisection.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ellipsect/polynomial.hpp"
#include "ellipsect/types.hpp"

namespace ellipsect {

constexpr double kGTol = 1e-10;      // absolute tolerance on g at the boundary
constexpr double kEdgeTol = 1e-6;    // box-face activity margin
constexpr int kBisectIters = 200;

class ConvexBody {
 public:
  ConvexBody(Poly3 g, std::optional<double> box, const Vec3& interior,
             bool strictly_convex, std::string name);

  const Poly3& smooth() const { return g_; }
  const std::optional<double>& box() const { return box_; }
  const Vec3& interior() const { return interior_; }
  bool strictly_convex() const { return strictly_convex_; }
  const std::string& name() const { return name_; }

  // Clamped field: max of the smooth g and the box constraints. Negative
  // strictly inside, zero on the boundary.
  double field(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const { return g_.gradient(p); }
  Mat3 hessian(const Vec3& p) const { return g_.hessian(p); }

  // Farthest boundary distance from the interior point, and the longest
  // chord through it (a diameter-scale constant used for tolerances).
  double reach() const { return reach_; }
  double scale() const { return scale_; }

 private:
  Poly3 g_;
  std::optional<double> box_;
  Vec3 interior_;
  bool strictly_convex_;
  std::string name_;
  double reach_ = 0, scale_ = 0;
};

struct BoundaryPoint {
  Vec3 p = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // outward unit normal
  bool on_edge = false;         // a box face is active within kEdgeTol
};

// First boundary crossing of the ray from + t*u, t > 0. `from` must be
// interior; by convexity the crossing is unique. NO_BRACKET when no sign
// change exists before the search cap (malformed body).
BoundaryPoint boundary_hit(const ConvexBody& body, const Vec3& from,
                           const Vec3& u);
BoundaryPoint boundary_hit(const ConvexBody& body, const Vec3& u);

// ---------------------------------------------------------------------------
// Catalog and config I/O.
// ---------------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  std::string summary;
  nlohmann::ordered_json default_params;
};

std::vector<CatalogEntry> catalog();

// Instantiate a catalog body; NOT_FOUND for unknown names, PARSE_ERROR for
// unknown or malformed parameters.
ConvexBody make_catalog_body(const std::string& name,
                             const nlohmann::json& params = {});

// Body config schema (strict; unknown keys rejected):
//   {"catalog": "<name>", "params": {...}}                          or
//   {"polynomial": [[ex,ey,ez,coeff],...], "box": b, "interior": [x,y,z]}
ConvexBody load_body(const nlohmann::json& config);
ConvexBody load_body_string(const std::string& text);
nlohmann::ordered_json dump_body(const ConvexBody& body);

}  // namespace ellipsect
