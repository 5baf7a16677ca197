#include "ellipsect/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ellipsect/errors.hpp"
#include "ellipsect/sampling.hpp"

namespace ellipsect {

namespace {

constexpr double kExpandCap = 1e6;

// Box exit parameter of the ray from + t*u (inf when the ray never leaves,
// which cannot happen for a genuine direction).
double box_exit(const Vec3& from, const Vec3& u, double b) {
  double t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (u[i] > 1e-300) t = std::min(t, (b - from[i]) / u[i]);
    else if (u[i] < -1e-300) t = std::min(t, (-b - from[i]) / u[i]);
  }
  return t;
}

struct RayHit {
  double t;
  bool on_box_face;
  int face_axis;  // valid when on_box_face
};

RayHit ray_boundary(const ConvexBody& body, const Vec3& from, const Vec3& u) {
  std::vector<double> poly = body.smooth().restrict_to_ray(from, u);
  const double g0 = eval_poly(poly, 0.0);
  if (!(g0 < 0.0))
    raise(Err::NO_BRACKET, "ray origin is not interior");

  double hi;
  bool box_is_boundary = false;
  int face_axis = -1;
  if (body.box()) {
    const double b = *body.box();
    double tb = box_exit(from, u, b);
    if (eval_poly(poly, tb) <= 0.0) {
      // Smooth surface not yet crossed at the box face: the face is the hit.
      Vec3 p = from + tb * u;
      double best = -1;
      for (int i = 0; i < 3; ++i)
        if (std::abs(p[i]) > best) { best = std::abs(p[i]); face_axis = i; }
      return {tb, true, face_axis};
    }
    hi = tb;
  } else {
    hi = 1.0;
    while (eval_poly(poly, hi) <= 0.0) {
      hi *= 1.6;
      if (hi > kExpandCap)
        raise(Err::NO_BRACKET, "no boundary crossing before search cap");
    }
  }

  double lo = 0.0;
  for (int i = 0; i < kBisectIters && (hi - lo) > 1e-17 * std::max(1.0, hi);
       ++i) {
    double mid = 0.5 * (lo + hi);
    if (eval_poly(poly, mid) > 0.0) hi = mid;
    else lo = mid;
  }
  return {0.5 * (lo + hi), box_is_boundary, face_axis};
}

}  // namespace

ConvexBody::ConvexBody(Poly3 g, std::optional<double> box, const Vec3& interior,
                       bool strictly_convex, std::string name)
    : g_(std::move(g)),
      box_(box),
      interior_(interior),
      strictly_convex_(strictly_convex),
      name_(std::move(name)) {
  if (box_ && !(*box_ > 0))
    raise(Err::PARSE_ERROR, "box bound must be positive");
  if (!(field(interior_) < 0))
    raise(Err::NOT_INTERIOR, "designated interior point has g >= 0");
  // Reach and diameter scale over a fixed direction set.
  for (const Vec3& u : fibonacci_directions(128)) {
    RayHit fwd = ray_boundary(*this, interior_, u);
    RayHit bwd = ray_boundary(*this, interior_, -u);
    reach_ = std::max(reach_, std::max(fwd.t, bwd.t));
    scale_ = std::max(scale_, fwd.t + bwd.t);
  }
}

double ConvexBody::field(const Vec3& p) const {
  double v = g_.eval(p);
  if (box_) {
    for (int i = 0; i < 3; ++i) v = std::max(v, std::abs(p[i]) - *box_);
  }
  return v;
}

BoundaryPoint boundary_hit(const ConvexBody& body, const Vec3& from,
                           const Vec3& u_in) {
  double len = u_in.norm();
  if (!(len > 0)) raise(Err::INVALID_ARGUMENT, "zero direction");
  Vec3 u = u_in / len;
  RayHit hit = ray_boundary(body, from, u);
  BoundaryPoint bp;
  bp.p = from + hit.t * u;
  if (hit.on_box_face) {
    bp.normal = Vec3::Zero();
    bp.normal[hit.face_axis] = bp.p[hit.face_axis] > 0 ? 1.0 : -1.0;
    bp.on_edge = true;
  } else {
    Vec3 g = body.gradient(bp.p);
    double gn = g.norm();
    if (!(gn > 0))
      raise(Err::NO_BRACKET, "vanishing gradient on boundary");
    bp.normal = g / gn;
    bp.on_edge = body.box() &&
                 bp.p.cwiseAbs().maxCoeff() >= *body.box() - kEdgeTol;
  }
  return bp;
}

BoundaryPoint boundary_hit(const ConvexBody& body, const Vec3& u) {
  return boundary_hit(body, body.interior(), u);
}

// ---------------------------------------------------------------------------
// Catalog.
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) { ok = true; break; }
    if (!ok) raise(Err::PARSE_ERROR, "unknown key '" + it.key() + "' in " + where);
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) raise(Err::PARSE_ERROR, std::string(key) + " must be a number");
  return obj[key].get<double>();
}

Vec3 get_vec3(const json& obj, const char* key, const Vec3& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_array() || v.size() != 3) raise(Err::PARSE_ERROR, std::string(key) + " must be [x,y,z]");
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

ConvexBody make_sphere(const json& params) {
  check_keys(params, {"r"}, "sphere params");
  double r = get_num(params, "r", 1.0);
  if (!(r > 0)) raise(Err::PARSE_ERROR, "sphere radius must be positive");
  Poly3 g({{2, 0, 0, 1.0}, {0, 2, 0, 1.0}, {0, 0, 2, 1.0}, {0, 0, 0, -r * r}});
  return ConvexBody(std::move(g), std::nullopt, Vec3::Zero(), true, "sphere");
}

ConvexBody make_ellipsoid(const json& params) {
  check_keys(params, {"a", "b", "c", "rotation", "translation"},
             "ellipsoid params");
  double a = get_num(params, "a", 1.0);
  double b = get_num(params, "b", 1.0);
  double c = get_num(params, "c", 1.0);
  if (!(a > 0 && b > 0 && c > 0))
    raise(Err::PARSE_ERROR, "ellipsoid semi-axes must be positive");
  Vec3 w = get_vec3(params, "rotation", Vec3::Zero());
  Vec3 t = get_vec3(params, "translation", Vec3::Zero());
  Mat3 R = rotation_from_vector(w);
  Mat3 M = R * Vec3(1 / (a * a), 1 / (b * b), 1 / (c * c)).asDiagonal() *
           R.transpose();
  Vec3 bb = -M * t;
  Vec10 q;
  q << M(0, 0), M(1, 1), M(2, 2), 2 * M(0, 1), 2 * M(0, 2), 2 * M(1, 2),
      2 * bb[0], 2 * bb[1], 2 * bb[2], t.dot(M * t) - 1.0;
  return ConvexBody(Poly3::from_quadric(Quadric(q)), std::nullopt, t, true,
                    "ellipsoid");
}

ConvexBody make_alonso_c(const json& params) {
  check_keys(params, {}, "alonso-c params");
  Poly3 g({{2, 0, 0, 1.0},
           {0, 2, 0, 1.0},
           {0, 0, 2, 1.0},
           {1, 1, 1, 1.25},
           {0, 0, 0, -1.0}});
  return ConvexBody(std::move(g), 1.0, Vec3::Zero(), true, "alonso-c");
}

ConvexBody make_superellipsoid(const json& params) {
  check_keys(params, {}, "superellipsoid params");
  Poly3 g({{4, 0, 0, 1.0}, {0, 4, 0, 1.0}, {0, 0, 4, 1.0}, {0, 0, 0, -1.0}});
  return ConvexBody(std::move(g), std::nullopt, Vec3::Zero(), true,
                    "superellipsoid");
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  return {
      {"sphere", "ball of radius r centered at the origin",
       nlohmann::ordered_json{{"r", 1.0}}},
      {"ellipsoid",
       "semi-axes (a,b,c) with optional rotation vector and translation",
       nlohmann::ordered_json{{"a", 1.0}, {"b", 1.0}, {"c", 1.0},
                              {"rotation", {0.0, 0.0, 0.0}},
                              {"translation", {0.0, 0.0, 0.0}}}},
      {"alonso-c",
       "x^2+y^2+z^2+(5/4)xyz <= 1 clamped to max(|x|,|y|,|z|) <= 1; "
       "coordinate-plane sections are ellipses but the boundary is not an "
       "ellipsoid",
       nlohmann::ordered_json::object()},
      {"superellipsoid", "x^4+y^4+z^4 <= 1; no planar section is a conic",
       nlohmann::ordered_json::object()},
  };
}

ConvexBody make_catalog_body(const std::string& name,
                             const nlohmann::json& params) {
  const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  if (!p.is_object()) raise(Err::PARSE_ERROR, "params must be an object");
  if (name == "sphere") return make_sphere(p);
  if (name == "ellipsoid") return make_ellipsoid(p);
  if (name == "alonso-c") return make_alonso_c(p);
  if (name == "superellipsoid") return make_superellipsoid(p);
  raise(Err::NOT_FOUND, "no catalog body named '" + name + "'");
}

ConvexBody load_body(const nlohmann::json& config) {
  if (!config.is_object()) raise(Err::PARSE_ERROR, "body config must be an object");
  if (config.contains("catalog")) {
    check_keys(config, {"catalog", "params"}, "body config");
    if (!config["catalog"].is_string())
      raise(Err::PARSE_ERROR, "catalog must be a string");
    return make_catalog_body(config["catalog"].get<std::string>(),
                             config.value("params", nlohmann::json::object()));
  }
  check_keys(config, {"polynomial", "box", "interior"}, "body config");
  if (!config.contains("polynomial"))
    raise(Err::PARSE_ERROR, "config needs either 'catalog' or 'polynomial'");
  const auto& terms = config["polynomial"];
  if (!terms.is_array() || terms.empty())
    raise(Err::PARSE_ERROR, "polynomial must be a non-empty array");
  std::vector<Monomial> monos;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 4)
      raise(Err::PARSE_ERROR, "each monomial must be [ex,ey,ez,coeff]");
    if (!t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number_integer())
      raise(Err::PARSE_ERROR, "monomial exponents must be integers");
    monos.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(),
                     t[3].get<double>()});
  }
  std::optional<double> box;
  if (config.contains("box")) {
    if (!config["box"].is_number()) raise(Err::PARSE_ERROR, "box must be a number");
    box = config["box"].get<double>();
  }
  Vec3 interior = Vec3::Zero();
  if (config.contains("interior")) interior = get_vec3(config, "interior", interior);
  return ConvexBody(Poly3(std::move(monos)), box, interior, true, "polynomial");
}

ConvexBody load_body_string(const std::string& text) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(Err::PARSE_ERROR, e.what());
  }
  return load_body(config);
}

nlohmann::ordered_json dump_body(const ConvexBody& body) {
  nlohmann::ordered_json cfg;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& m : body.smooth().terms())
    terms.push_back({m.ex, m.ey, m.ez, m.coeff});
  cfg["polynomial"] = terms;
  if (body.box()) cfg["box"] = *body.box();
  cfg["interior"] = {body.interior()[0], body.interior()[1], body.interior()[2]};
  return cfg;
}

}  // namespace ellipsect
