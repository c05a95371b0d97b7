#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "quadfold/io.hpp"

using namespace quadfold;
using oracle::rad;

namespace {

QuadPattern squares(int m, int n) {
  return layout(m, n, std::vector<Vertex4>(m * n, Vertex4::from_degrees(90, 90, 90, 90)), {});
}

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (size_t k = s.find(what); k != std::string::npos; k = s.find(what, k + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(123456789012345.0) == "123456789012000");
  CHECK(format_number(2.5e-7) == "2.5e-07");
  CHECK(round12(std::numbers::pi) == 3.14159265359);
  CHECK_THROWS_AS(format_number(std::nan("")), Error);
}

TEST_CASE("square grid exports as an unfolded pattern") {
  const QuadPattern p = squares(2, 2);
  const Json doc = export_fold(p);
  for (const auto& a : doc["edges_assignment"]) CHECK((a == "F" || a == "B"));
  CHECK(doc["faces_vertices"].size() == 9);
  CHECK(doc["frame_classes"][0] == "creasePattern");
  const std::string text = dump(doc);
  CHECK(text.find("\"edges_assignment\"") < text.find("\"vertices_coords\""));
}

TEST_CASE("fold round trip") {
  const Stitched s = stitch(fixtures::fig7());
  const Propagator prop(s.pattern, s.pattern.default_branches);
  const auto rho = prop.at(rad(45)).crease;
  const Json doc = export_fold(s.pattern, rho);
  const FoldDoc back = import_fold(Json::parse(dump(doc)));
  CHECK(back.pattern.rows() == 3);
  CHECK(back.pattern.cols() == 3);
  CHECK(back.pattern.default_branches == s.pattern.default_branches);
  CHECK(back.pattern.default_links == s.pattern.default_links);
  for (Eigen::Index k = 0; k < s.pattern.points().size(); ++k)
    CHECK(back.pattern.points().data()[k] == round12(s.pattern.points().data()[k]));
  for (size_t e = 0; e < rho.size(); ++e) {
    if (!s.pattern.edges()[e].is_crease()) continue;
    CHECK(rad2deg(back.crease[e]) == doctest::Approx(round12(rad2deg(rho[e]))).epsilon(1e-15));
  }
  // Exporting the import gives the same bytes.
  CHECK(dump(export_fold(back.pattern, back.crease)) == dump(doc));

  // Letters follow the labels of the same angles.
  const auto mv = mv_assignment(s.pattern, rho);
  for (size_t e = 0; e < mv.size(); ++e) CHECK(doc["edges_assignment"][e] == std::string(1, static_cast<char>(mv[e])));
}

TEST_CASE("folded frame round trip") {
  const Stitched s = stitch(fixtures::fig8());
  const SweepResult r = sweep(s.pattern, s.pattern.default_branches, 5);
  const FoldedState& f = r.frames[3];
  const Json doc = export_fold(s.pattern, {}, &f);
  CHECK(doc["frame_classes"][0] == "foldedForm");
  const FoldDoc back = import_fold(doc);
  REQUIRE(back.folded.has_value());
  CHECK((*back.folded - f.coords).cwiseAbs().maxCoeff() < 1e-10);
  for (size_t e = 0; e < f.crease.size(); ++e) {
    const std::string a = doc["edges_assignment"][e];
    const double deg = doc["edges_foldAngle"][e];
    if (a == "M") CHECK(deg < 0);
    if (a == "V") CHECK(deg > 0);
    if (a == "F" || a == "B") CHECK(deg == 0);
  }
}

TEST_CASE("fold import rejects inconsistent documents") {
  const Stitched s = stitch(fixtures::fig7());
  const Propagator prop(s.pattern, s.pattern.default_branches);
  Json doc = export_fold(s.pattern, prop.at(rad(30)).crease);
  Json bad = doc;
  const int e = s.pattern.crease(0, 0, S);
  bad["edges_assignment"][e] = bad["edges_assignment"][e] == "M" ? "V" : "M";
  CHECK_THROWS_AS(import_fold(bad), Error);
  bad = doc;
  bad["edges_vertices"][0][1] = 5;
  CHECK_THROWS_AS(import_fold(bad), Error);
  bad = doc;
  bad.erase("quadfold:grid");
  CHECK_THROWS_AS(import_fold(bad), Error);
  CHECK_THROWS_AS(export_fold(QuadPattern()), Error);
}

TEST_CASE("obj export") {
  const QuadPattern p = squares(1, 2);
  const Eigen::MatrixX3d flat = (Eigen::MatrixX3d(p.points().rows(), 3) << p.points(),
                                 Eigen::VectorXd::Zero(p.points().rows()))
                                    .finished();
  const std::string obj = export_obj(p, flat);
  CHECK(count(obj, "\nv ") == 12);
  CHECK(count(obj, "\nf ") == 6);
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("v ", 0) == 0) CHECK(line.substr(line.rfind(' ') + 1) == "0");
  Eigen::MatrixX3d squashed = flat;
  squashed.row(p.point(1, 1)) = squashed.row(p.point(0, 0));
  squashed.row(p.point(1, 0)) = squashed.row(p.point(0, 1));
  CHECK_THROWS_AS(export_obj(p, squashed), Error);
}

TEST_CASE("svg export") {
  const Stitched s = stitch(fixtures::fig7());
  const auto flat = mv_assignment(s.pattern, std::vector<double>(s.pattern.edges().size(), 0.0));
  const std::string a = export_svg(s.pattern, flat);
  CHECK(count(a, "stroke=\"grey\"") == 24);
  CHECK(count(a, "stroke=\"black\"") == 16);
  CHECK(count(a, "stroke=\"red\"") == 0);
  const Propagator prop(s.pattern, s.pattern.default_branches);
  const auto mv = mv_assignment(s.pattern, prop.at(rad(45)).crease);
  int m = 0, v = 0;
  for (auto x : mv) {
    m += x == Assignment::Mountain;
    v += x == Assignment::Valley;
  }
  const std::string b = export_svg(s.pattern, mv);
  CHECK(count(b, "stroke=\"red\"") == m);
  CHECK(count(b, "stroke=\"blue\"") == v);
  CHECK(m + v == 24);
  CHECK_THROWS_AS(export_svg(QuadPattern(), {}), Error);
}

TEST_CASE("configuration") {
  const Config d = config_from_json(Json::object());
  CHECK(d.tol.compat == 1e-8);
  CHECK(d.samples == 200);
  const Config c = config_from_json(Json::parse(
      R"({"tolerances": {"compat": 1e-7}, "samples": 50, "angle_unit": "rad",
          "dof_table": {"straight_line": {"first": 1}}})"));
  CHECK(c.tol.compat == 1e-7);
  CHECK(c.samples == 50);
  CHECK_FALSE(c.degrees);
  CHECK(c.dof.dof[static_cast<int>(UnitKind::StraightLine)][0] == 1);
  for (const char* bad : {R"({"tolerances": {"compat": -1}})", R"({"tolerances": {"nope": 1}})",
                          R"({"samples": 1})", R"({"angle_unit": "grad"})"})
    CHECK_THROWS_AS(config_from_json(Json::parse(bad)), Error);
}
