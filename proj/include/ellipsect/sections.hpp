#pragma once

// Planar sections of convex bodies: interiority predicates for planes and
// lines (with witnesses) and extraction of section boundary curves.

#include <iosfwd>
#include <utility>
#include <vector>

#include "ellipsect/body.hpp"
#include "ellipsect/kernel.hpp"

namespace ellipsect {

// Tangential planes/lines count as non-cutting below this margin on g.
constexpr double kGStrict = 1e-8;

// Ordered closed sampling of bd K intersected with a plane, expressed in the
// plane's deterministic frame. Samples wrap around (index m goes back to 0)
// and are in strictly increasing polar-angle order about the in-plane star
// center.
struct PlanarCurve {
  Plane host;
  PlaneFrame frame;
  std::vector<Vec2> pts;
  std::vector<bool> on_edge;  // per sample, box-face flag of the boundary hit
  Vec2 star_center = Vec2::Zero();

  Vec3 lift(int i) const { return frame.lift(pts[i]); }
  int size() const { return int(pts.size()); }
  double diameter() const;
  Vec2 centroid() const;
};

// Minimum of g over the plane (coarse grid + deterministic pattern descent);
// true with an interior witness when min < -kGStrict.
std::pair<bool, Vec3> plane_meets_interior(const ConvexBody& body,
                                           const Plane& H);

// Minimum of g along the line, exact on the smooth part via the univariate
// restriction; true with an interior witness when min < -kGStrict.
std::pair<bool, Vec3> line_meets_interior(const ConvexBody& body,
                                          const Line& L);

// Boundary samples along m equally spaced in-plane directions from the
// interiority witness, recentred once at the sample centroid.
// NO_INTERSECTION when the plane does not cut the interior. m >= 16.
PlanarCurve extract_section(const ConvexBody& body, const Plane& H,
                            int m = 256);

// Chord endpoints of a line that meets the interior.
std::pair<BoundaryPoint, BoundaryPoint> line_chord(const ConvexBody& body,
                                                   const Line& L);

// Shoelace area of the closed sample polygon.
double polygon_area(const PlanarCurve& curve);

// CSV emission: idx,u,v,x,y,z with 17 significant digits.
void write_curve_csv(const PlanarCurve& curve, std::ostream& os);

}  // namespace ellipsect
