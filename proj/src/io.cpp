#include "quadfold/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace quadfold {

std::string format_number(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::SerializationError, "non-finite number");
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  double y = 0;
  std::from_chars(buf, r.ptr, y);
  if (y == 0) return "0";
  r = std::to_chars(buf, buf + sizeof buf, y);
  return std::string(buf, r.ptr);
}

double round12(double x) {
  const std::string s = format_number(x);
  double y = 0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

namespace {

Json degrees(const Vertex4& v) {
  Json a = Json::array();
  for (int k = 0; k < 4; ++k) a.push_back(round12(rad2deg(v[k])));
  return a;
}

Vertex4 vertex_deg(const Json& a) {
  if (!a.is_array() || a.size() != 4) throw Error(ErrorCode::SerializationError, "vertex needs four angles");
  return Vertex4::from_degrees(a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>());
}

UnitKind kind_from(const std::string& s) {
  for (auto k : {UnitKind::FlatFoldable, UnitKind::FlatFoldableBasic, UnitKind::StraightLine, UnitKind::GeneralBasic,
                 UnitKind::Custom})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::SerializationError, "unknown unit type '" + s + "'");
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SerializationError, e.what());
  }
}

}  // namespace

Json unit_to_json(const Unit& u) {
  Json sectors = degrees(u.top);
  for (const auto& a : degrees(u.bottom)) sectors.push_back(a);
  return Json{{"type", to_string(u.kind)},
              {"sector_deg", sectors},
              {"signs", {u.signs[0], u.signs[1]}},
              {"branches", {to_string(u.branch_top), to_string(u.branch_bottom)}},
              {"crease_lengths", {{"shared", u.shared_length}}}};
}

Unit unit_from_json(const Json& j) {
  return guarded([&] {
    Unit u;
    u.kind = j.contains("type") ? kind_from(j.at("type").get<std::string>()) : UnitKind::Custom;
    if (j.contains("sector_deg")) {
      const auto& s = j.at("sector_deg");
      if (!s.is_array() || s.size() != 8) throw Error(ErrorCode::SerializationError, "sector_deg needs 8 angles");
      u.top = vertex_deg(Json{s[0], s[1], s[2], s[3]});
      u.bottom = vertex_deg(Json{s[4], s[5], s[6], s[7]});
    } else {
      u.top = vertex_deg(j.at("top_deg"));
      u.bottom = vertex_deg(j.at("bottom_deg"));
    }
    if (j.contains("signs")) {
      const auto& s = j.at("signs");
      u.signs = {s.at(0).get<int>(), s.at(1).get<int>()};
      for (int x : u.signs)
        if (x != 1 && x != -1) throw Error(ErrorCode::SerializationError, "signs must be +1 or -1");
    }
    if (j.contains("branches")) {
      const auto& b = j.at("branches");
      u.branch_top = parse_branch(b.at(0).get<std::string>());
      u.branch_bottom = parse_branch(b.at(b.size() > 1 ? 1 : 0).get<std::string>());
    } else {
      u.branch_top = parse_branch(j.value("branch_top", std::string("1")));
      u.branch_bottom = parse_branch(j.value("branch_bottom", to_string(u.branch_top)));
    }
    u.shared_length = j.contains("crease_lengths") ? j.at("crease_lengths").value("shared", 1.0)
                                                    : j.value("shared_length", 1.0);
    return u;
  });
}

StitchPlan plan_from_json(const Json& j) {
  return guarded([&] {
    StitchPlan plan;
    for (const auto& col : j.at("columns")) {
      std::vector<UnitDescriptor> units;
      for (const auto& d : col) {
        UnitDescriptor u;
        u.kind = kind_from(d.at("type").get<std::string>());
        for (const char* key : {"vertex_deg", "alphas_deg"})
          if (d.contains(key))
            for (const auto& a : d.at(key)) u.angles.push_back(deg2rad(a.get<double>()));
        if (d.contains("mode")) u.mode = parse_mode(d.at("mode").get<std::string>());
        if (d.contains("branch")) u.branch = parse_branch(d.at("branch").get<std::string>());
        u.shared_length = d.value("shared_length", 1.0);
        if (u.kind == UnitKind::Custom) {
          u.custom = unit_from_json(d.at("unit"));
          u.custom_dof = d.value("dof", 0);
          u.custom_branches = d.value("branches", 1);
        }
        units.push_back(std::move(u));
      }
      plan.columns.push_back(std::move(units));
    }
    if (j.contains("lengths")) {
      const auto& l = j.at("lengths");
      plan.lengths.top = l.value("top", std::vector<double>{});
      plan.lengths.left = l.value("left", std::vector<double>{});
      plan.lengths.boundary = l.value("boundary", 1.0);
    }
    return plan;
  });
}

Json plan_to_json(const StitchPlan& plan) {
  Json cols = Json::array();
  for (const auto& col : plan.columns) {
    Json c = Json::array();
    for (const auto& u : col) {
      Json d{{"type", to_string(u.kind)}, {"shared_length", u.shared_length}};
      if (!u.angles.empty()) {
        Json a = Json::array();
        for (double x : u.angles) a.push_back(rad2deg(x));
        const bool vertex = u.kind == UnitKind::StraightLine || u.kind == UnitKind::GeneralBasic;
        d[vertex ? "vertex_deg" : "alphas_deg"] = a;
      }
      if (u.mode) d["mode"] = mode_name(*u.mode);
      if (u.branch) d["branch"] = to_string(*u.branch);
      if (u.custom) {
        d["unit"] = unit_to_json(*u.custom);
        d["dof"] = u.custom_dof;
        d["branches"] = u.custom_branches;
      }
      c.push_back(d);
    }
    cols.push_back(c);
  }
  return Json{{"columns", cols},
              {"lengths", {{"top", plan.lengths.top}, {"left", plan.lengths.left}, {"boundary", plan.lengths.boundary}}}};
}

namespace {

const char* kGrid = "quadfold:grid";
const char* kBranches = "quadfold:branches";
const char* kLinks = "quadfold:links";
const char* kLayout = "quadfold:layout";

Json coords(const Eigen::MatrixXd& x) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c) row.push_back(round12(x(r, c)));
    out.push_back(row);
  }
  return out;
}

Eigen::MatrixXd read_coords(const Json& a, int dim) {
  Eigen::MatrixXd x(a.size(), dim);
  for (size_t r = 0; r < a.size(); ++r) {
    if (static_cast<int>(a[r].size()) != dim) throw Error(ErrorCode::SerializationError, "coordinate dimension");
    for (int c = 0; c < dim; ++c) x(r, c) = a[r][c].get<double>();
  }
  return x;
}

}  // namespace

Json export_fold(const QuadPattern& p, const std::vector<double>& rho, const FoldedState* folded,
                 const Tolerances& tol) {
  if (p.empty()) throw Error(ErrorCode::SerializationError, "empty pattern");
  const auto& edges = p.edges();
  std::vector<double> angles = rho.empty() ? std::vector<double>(edges.size(), 0.0) : rho;
  if (folded && rho.empty()) angles = folded->crease;
  if (angles.size() != edges.size()) throw Error(ErrorCode::SerializationError, "one folding angle per edge needed");
  const auto labels = mv_assignment(p, angles, tol);

  Json ev = Json::array(), ea = Json::array(), ef = Json::array(), fv = Json::array();
  for (size_t e = 0; e < edges.size(); ++e) {
    ev.push_back({edges[e].a, edges[e].b});
    ea.push_back(std::string(1, static_cast<char>(labels[e])));
    const bool folds = labels[e] == Assignment::Mountain || labels[e] == Assignment::Valley;
    ef.push_back(folds ? round12(rad2deg(angles[e])) : 0.0);
  }
  for (const auto& q : p.panels()) fv.push_back({q[0], q[1], q[2], q[3]});

  Json doc{{"file_spec", 1.1},
           {"file_creator", "quadfold"},
           {"file_classes", {"singleModel"}},
           {"frame_classes", {folded ? "foldedForm" : "creasePattern"}},
           {"frame_attributes", {folded ? "3D" : "2D"}},
           {"edges_vertices", ev},
           {"edges_assignment", ea},
           {"edges_foldAngle", ef},
           {"faces_vertices", fv},
           {kGrid, {{"rows", p.rows()}, {"cols", p.cols()}}}};
  if (folded) {
    doc["vertices_coords"] = coords(folded->coords);
    doc[kLayout] = coords(p.points());
    doc["quadfold:driving_angle"] = round12(rad2deg(folded->driving_angle));
  } else {
    doc["vertices_coords"] = coords(p.points());
  }
  if (!p.default_branches.empty()) {
    Json b = Json::array();
    for (BranchId x : p.default_branches) b.push_back(to_string(x));
    doc[kBranches] = b;
  }
  if (!p.default_links.empty()) {
    Json l = Json::array();
    for (const auto& x : p.default_links) l.push_back({x[0], x[1]});
    doc[kLinks] = l;
  }
  return doc;
}

FoldDoc import_fold(const Json& doc, const Tolerances& tol) {
  return guarded([&] {
    if (!doc.contains(kGrid)) throw Error(ErrorCode::SerializationError, "not a quadrilateral grid document");
    const int rows = doc.at(kGrid).at("rows").get<int>(), cols = doc.at(kGrid).at("cols").get<int>();
    const bool folded = doc.contains(kLayout);
    const Eigen::MatrixXd flat = read_coords(folded ? doc.at(kLayout) : doc.at("vertices_coords"), 2);
    FoldDoc out;
    out.pattern = QuadPattern(rows, cols, flat, tol);
    QuadPattern& p = out.pattern;
    if (folded) out.folded = Eigen::MatrixX3d(read_coords(doc.at("vertices_coords"), 3));

    const auto& edges = p.edges();
    const auto& ev = doc.at("edges_vertices");
    if (ev.size() != edges.size()) throw Error(ErrorCode::SerializationError, "edge count does not match the grid");
    for (size_t e = 0; e < edges.size(); ++e)
      if (ev[e].at(0).get<int>() != edges[e].a || ev[e].at(1).get<int>() != edges[e].b)
        throw Error(ErrorCode::SerializationError, "edge " + std::to_string(e) + " does not match the grid");
    const auto& fv = doc.at("faces_vertices");
    const auto panels = p.panels();
    if (fv.size() != panels.size()) throw Error(ErrorCode::SerializationError, "face count does not match the grid");
    for (size_t f = 0; f < panels.size(); ++f)
      for (int k = 0; k < 4; ++k)
        if (fv[f].at(k).get<int>() != panels[f][k])
          throw Error(ErrorCode::SerializationError, "face " + std::to_string(f) + " does not match the grid");

    out.crease.assign(edges.size(), 0.0);
    if (doc.contains("edges_foldAngle")) {
      const auto& ef = doc.at("edges_foldAngle");
      if (ef.size() != edges.size()) throw Error(ErrorCode::SerializationError, "edges_foldAngle length");
      for (size_t e = 0; e < edges.size(); ++e) out.crease[e] = deg2rad(ef[e].get<double>());
    }
    if (doc.contains("edges_assignment")) {
      const auto& ea = doc.at("edges_assignment");
      if (ea.size() != edges.size()) throw Error(ErrorCode::SerializationError, "edges_assignment length");
      const auto labels = mv_assignment(p, out.crease, tol);
      for (size_t e = 0; e < edges.size(); ++e)
        if (ea[e].get<std::string>() != std::string(1, static_cast<char>(labels[e])))
          throw Error(ErrorCode::SerializationError,
                      "assignment of edge " + std::to_string(e) + " disagrees with its fold angle");
    }
    if (doc.contains(kBranches)) {
      for (const auto& b : doc.at(kBranches)) p.default_branches.push_back(parse_branch(b.get<std::string>()));
      if (static_cast<int>(p.default_branches.size()) != rows * cols)
        throw Error(ErrorCode::SerializationError, "one branch per inner vertex expected");
    }
    if (doc.contains(kLinks)) {
      for (const auto& l : doc.at(kLinks)) p.default_links.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
      if (static_cast<int>(p.default_links.size()) != rows * cols)
        throw Error(ErrorCode::SerializationError, "one link pair per inner vertex expected");
    }
    return out;
  });
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

std::string export_obj(const QuadPattern& p, const Eigen::MatrixX3d& x) {
  if (p.empty() || x.rows() != p.points().rows()) throw Error(ErrorCode::SerializationError, "coordinates do not match");
  std::string out = "# quadfold " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + "\n";
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    out += "v " + format_number(x(r, 0)) + " " + format_number(x(r, 1)) + " " + format_number(x(r, 2)) + "\n";
  for (const auto& q : p.panels()) {
    const Eigen::Vector3d a = x.row(q[0]), b = x.row(q[1]), c = x.row(q[2]), d = x.row(q[3]);
    const double area = 0.5 * ((c - a).cross(d - b)).norm();
    const double scale = std::max((c - a).norm(), (d - b).norm());
    if (!(area > 1e-12 * scale * scale)) throw Error(ErrorCode::SerializationError, "degenerate panel");
    out += "f " + std::to_string(q[0] + 1) + " " + std::to_string(q[1] + 1) + " " + std::to_string(q[2] + 1) + " " +
           std::to_string(q[3] + 1) + "\n";
  }
  return out;
}

std::string export_svg(const QuadPattern& p, const std::vector<Assignment>& labels) {
  if (p.empty()) throw Error(ErrorCode::SerializationError, "empty pattern");
  if (labels.size() != p.edges().size()) throw Error(ErrorCode::SerializationError, "one label per edge needed");
  const auto& X = p.points();
  const Eigen::RowVector2d lo = X.colwise().minCoeff(), hi = X.colwise().maxCoeff();
  const double size = (hi - lo).maxCoeff();
  const double pad = 0.05 * size, w = hi.x() - lo.x() + 2 * pad, h = hi.y() - lo.y() + 2 * pad;
  auto fx = [&](double x) { return format_number(x - lo.x() + pad); };
  auto fy = [&](double y) { return format_number(hi.y() - y + pad); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + format_number(w) + " " +
                    format_number(h) + "\" stroke-width=\"" + format_number(0.006 * size) +
                    "\" stroke-linecap=\"round\">\n";
  // Boundary first so creases draw over it.
  for (int pass = 0; pass < 2; ++pass)
    for (size_t e = 0; e < labels.size(); ++e) {
      const bool boundary = labels[e] == Assignment::Boundary;
      if (boundary != (pass == 0)) continue;
      const char* colour = "black";
      if (labels[e] == Assignment::Mountain) colour = "red";
      else if (labels[e] == Assignment::Valley) colour = "blue";
      else if (labels[e] == Assignment::Flat) colour = "grey";
      const auto& g = p.edges()[e];
      out += "<line x1=\"" + fx(X(g.a, 0)) + "\" y1=\"" + fy(X(g.a, 1)) + "\" x2=\"" + fx(X(g.b, 0)) + "\" y2=\"" +
             fy(X(g.b, 1)) + "\" stroke=\"" + colour + "\"/>\n";
    }
  out += "</svg>\n";
  return out;
}

Config config_from_json(const Json& j) {
  return guarded([&] {
    Config c;
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      const std::pair<const char*, double*> fields[] = {
          {"angle", &c.tol.angle}, {"class_band", &c.tol.class_band}, {"eval", &c.tol.eval},
          {"clamp", &c.tol.clamp}, {"root", &c.tol.root},             {"unit", &c.tol.unit},
          {"compat", &c.tol.compat}, {"rigid", &c.tol.rigid},         {"closure", &c.tol.closure},
          {"flat", &c.tol.flat},   {"dir", &c.tol.dir}};
      for (auto it = t.begin(); it != t.end(); ++it) {
        bool known = false;
        for (const auto& [name, slot] : fields)
          if (it.key() == name) {
            *slot = it.value().get<double>();
            known = true;
            if (!(*slot > 0)) throw Error(ErrorCode::ConfigError, std::string("tolerance ") + name + " must be positive");
          }
        if (!known) throw Error(ErrorCode::ConfigError, "unknown tolerance '" + it.key() + "'");
      }
    }
    if (j.contains("dof_table")) {
      for (auto it = j.at("dof_table").begin(); it != j.at("dof_table").end(); ++it) {
        const UnitKind k = kind_from(it.key());
        if (k == UnitKind::Custom) throw Error(ErrorCode::ConfigError, "custom units carry their own counts");
        const int i = static_cast<int>(k);
        const auto& v = it.value();
        if (v.contains("first")) c.dof.dof[i][0] = v.at("first").get<int>();
        if (v.contains("stitched")) c.dof.dof[i][1] = v.at("stitched").get<int>();
        if (v.contains("branches")) c.dof.branches[i] = v.at("branches").get<int>();
        if (c.dof.branches[i] < 1) throw Error(ErrorCode::ConfigError, "branch counts must be at least 1");
      }
    }
    c.samples = j.value("samples", c.samples);
    c.frames = j.value("frames", c.frames);
    c.output_dir = j.value("output_dir", c.output_dir);
    const std::string unit = j.value("angle_unit", std::string("deg"));
    if (unit != "deg" && unit != "rad") throw Error(ErrorCode::ConfigError, "angle_unit must be deg or rad");
    c.degrees = unit == "deg";
    if (c.samples < 2) throw Error(ErrorCode::ConfigError, "samples must be at least 2");
    if (c.frames < 1) throw Error(ErrorCode::ConfigError, "frames must be at least 1");
    return c;
  });
}

Config load_config() {
  const char* path = std::getenv("QUADFOLD_CONFIG");
  if (!path || !*path) return {};
  try {
    return config_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, std::string(path) + ": " + e.detail());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SerializationError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SerializationError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::SerializationError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::SerializationError, "write failed for " + path);
}

}  // namespace quadfold
