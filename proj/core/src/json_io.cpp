#include "miquel/json_io.hpp"

#include <json.hpp>  // vendored nlohmann/json single header

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace miquel {

using json = nlohmann::json;

namespace {
std::string face_key(int fx, int fy) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g,%g", fx + 0.5, fy + 0.5);
  return buf;
}

std::pair<int, int> parse_face_key(const std::string& key) {
  double i = 0, j = 0;
  if (std::sscanf(key.c_str(), "%lf,%lf", &i, &j) != 2)
    throw InvalidParameters("phi_from_json: bad face key '" + key + "'");
  const double fx = i - 0.5, fy = j - 0.5;
  if (fx != std::floor(fx) || fy != std::floor(fy))
    throw InvalidParameters("phi_from_json: face key must be half-integers");
  return {static_cast<int>(fx), static_cast<int>(fy)};
}
}  // namespace

std::string pattern_to_json(const TorusPattern& p) {
  json out;
  out["m"] = p.m();
  out["n"] = p.n();
  out["s"] = p.s();
  out["u"] = {p.u().x, p.u().y};
  out["v"] = {p.v().x, p.v().y};
  json verts = json::array();
  for (int y = 0; y < p.n(); ++y)
    for (int x = 0; x < p.m(); ++x)
      verts.push_back({p.vertex(x, y).x, p.vertex(x, y).y});
  out["vertices"] = std::move(verts);
  return out.dump(2) + "\n";
}

TorusPattern pattern_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParameters(std::string("pattern_from_json: ") + e.what());
  }
  try {
    const int m = in.at("m").get<int>();
    const int n = in.at("n").get<int>();
    const int s = in.at("s").get<int>();
    const Vec2 u{in.at("u").at(0).get<double>(), in.at("u").at(1).get<double>()};
    const Vec2 v{in.at("v").at(0).get<double>(), in.at("v").at(1).get<double>()};
    const auto& verts_in = in.at("vertices");
    std::vector<Point> verts;
    verts.reserve(verts_in.size());
    for (const auto& row : verts_in)
      verts.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    return TorusPattern(m, n, s, std::move(verts), u, v);
  } catch (const json::exception& e) {
    throw InvalidParameters(std::string("pattern_from_json: ") + e.what());
  }
}

std::string phi_to_json(const PhiField& f) {
  json out;
  out["m"] = f.m();
  out["n"] = f.n();
  out["s"] = f.s();
  json phi = json::object();
  for (int fy = 0; fy < f.n(); ++fy)
    for (int fx = 0; fx < f.m(); ++fx) {
      json face;
      face["N"] = f.at(fx, fy, Dir::N);
      face["W"] = f.at(fx, fy, Dir::W);
      face["S"] = f.at(fx, fy, Dir::S);
      face["E"] = f.at(fx, fy, Dir::E);
      phi[face_key(fx, fy)] = std::move(face);
    }
  out["phi"] = std::move(phi);
  return out.dump(2) + "\n";
}

PhiField phi_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParameters(std::string("phi_from_json: ") + e.what());
  }
  try {
    const int m = in.at("m").get<int>();
    const int n = in.at("n").get<int>();
    const int s = in.at("s").get<int>();
    PhiField f(m, n, s);
    const auto& phi = in.at("phi");
    if (phi.size() != static_cast<std::size_t>(m) * n)
      throw InvalidParameters("phi_from_json: wrong number of faces");
    for (auto it = phi.begin(); it != phi.end(); ++it) {
      const auto [fx, fy] = parse_face_key(it.key());
      if (fx < 0 || fx >= m || fy < 0 || fy >= n)
        throw InvalidParameters("phi_from_json: face key outside fundamental domain");
      f.at(fx, fy, Dir::N) = it.value().at("N").get<double>();
      f.at(fx, fy, Dir::W) = it.value().at("W").get<double>();
      f.at(fx, fy, Dir::S) = it.value().at("S").get<double>();
      f.at(fx, fy, Dir::E) = it.value().at("E").get<double>();
    }
    return f;
  } catch (const json::exception& e) {
    throw InvalidParameters(std::string("phi_from_json: ") + e.what());
  }
}

std::string validation_report_to_json(const ValidationReport& r) {
  json out;
  out["pass"] = r.pass;
  out["worst_face"] = {{"i", r.worst_face.i()}, {"j", r.worst_face.j()}};
  out["worst_residual"] = r.worst_residual;
  out["min_center_separation"] = r.worst_separation.separation;
  json faces = json::object();
  for (const auto& fr : r.face_residuals)
    faces[face_key(fr.face.fx, fr.face.fy)] = fr.residual;
  out["face_residuals"] = std::move(faces);
  json seps = json::array();
  for (const auto& cs : r.center_separations)
    seps.push_back({{"a", face_key(cs.a.fx, cs.a.fy)},
                    {"b", face_key(cs.b.fx, cs.b.fy)},
                    {"separation", cs.separation}});
  out["center_separations"] = std::move(seps);
  return out.dump(2) + "\n";
}

std::string condition_report_to_json(const ConditionReport& r) {
  json out;
  out["pass"] = r.pass;
  out["worst"] = r.worst;
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"label", e.label},
                       {"detail", e.detail},
                       {"residual", e.residual},
                       {"pass", e.pass}});
  out["conditions"] = std::move(entries);
  return out.dump(2) + "\n";
}

std::string invariant_report_to_json(const InvariantReport& r) {
  json out;
  out["gamma"] = {{"horizontal", r.gamma.horizontal}, {"vertical", r.gamma.vertical}};
  out["monodromy_ratio"] = {r.monodromy.first, r.monodromy.second};
  out["isoradial"] = r.is_isoradial;
  out["period"] = r.period;
  out["worst_theta_vertex_sum"] = r.worst_theta_vertex_sum;
  return out.dump(2) + "\n";
}

std::string quartic_report_to_json(const QuarticModel& q,
                                   const std::vector<double>& step_residuals) {
  json out;
  if (q.generic()) {
    const auto& g = std::get<GenericQuartic>(q.curve);
    out["variant"] = "generic";
    out["P"] = {g.P.x, g.P.y};
    out["P_prime"] = {g.Pp.x, g.Pp.y};
    out["O"] = {g.O.x, g.O.y};
    out["lambda"] = g.lambda;
    out["k"] = g.k;
    out["scale"] = g.scale;
  } else {
    const auto& r = std::get<RectangularQuartic>(q.curve);
    out["variant"] = "rectangular";
    out["a"] = r.a;
    out["b"] = r.b;
    out["c"] = r.c;
    out["origin"] = {r.origin.x, r.origin.y};
    out["axis"] = {r.ex.x, r.ex.y};
    out["scale"] = r.scale;
  }
  out["step_residuals"] = step_residuals;
  return out.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameters("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameters("cannot write file: " + path);
  out << content;
}

}  // namespace miquel
