#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "quadfold/io.hpp"

using namespace quadfold;

namespace {

struct Units {
  bool degrees = true;
  double in(double x) const { return degrees ? deg2rad(x) : x; }
  std::string out(double x) const { return format_number(degrees ? rad2deg(x) : x); }
};

Vertex4 vertex_from(const std::vector<double>& a, const Units& u) {
  return Vertex4(Vertex4::Angles(u.in(a[0]), u.in(a[1]), u.in(a[2]), u.in(a[3])));
}

// "line" picks whichever line branch the vertex has.
BranchCurve<double> curve_for(const Vertex4& v, const std::string& branch, const Tolerances& tol) {
  if (branch != "line") return BranchCurve<double>(v, parse_branch(branch), tol);
  try {
    return BranchCurve<double>(v, BranchId::LineSegment1, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WrongClass) throw;
    return BranchCurve<double>(v, BranchId::LineSegment2, tol);
  }
}

std::string branch_list(const BranchGrid& g) {
  std::string s;
  for (size_t k = 0; k < g.size(); ++k) s += (k ? "," : "") + std::string(to_string(g[k]));
  return s;
}

std::vector<BranchGrid> branch_choices(const QuadPattern& p, const std::string& spec) {
  if (spec == "stored") return {p.default_branches};
  if (spec == "all") return column_branch_choices(p);
  std::vector<BranchId> given;
  std::stringstream in(spec);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      given.push_back(parse_branch(tok));
    } catch (const Error&) {
      throw Error(ErrorCode::Usage, "--branches: unknown branch '" + tok + "'");
    }
  }
  const int m = p.rows(), n = p.cols();
  if (static_cast<int>(given.size()) == m * n) return {given};
  if (static_cast<int>(given.size()) != n)
    throw Error(ErrorCode::Usage, "--branches: need 'stored', 'all', one branch per column or one per vertex");
  BranchGrid g(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = given[j];
  return {g};
}

struct Exit {
  int code;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigid-foldable quadrilateral crease patterns"};
  app.require_subcommand(1);
  Config cfg;
  Units units;

  std::vector<double> alphas;
  double rho1 = 0;
  std::string branch = "1";
  std::string mode, file, out, branches_spec = "stored", format = "obj";
  int samples = -1, frames = -1;
  std::optional<double> rho;

  auto* vertex = app.add_subcommand("vertex", "single degree-4 vertex")->require_subcommand(1);
  auto* vsolve = vertex->add_subcommand("solve", "folding angles at a given rho1");
  vsolve->add_option("--alphas", alphas, "sector angles a1,a2,a3,a4")->required()->delimiter(',')->expected(4);
  vsolve->add_option("--rho1", rho1, "folding angle of crease 1")->required();
  vsolve->add_option("--branch", branch, "1, 2 or line")->check(CLI::IsMember({"1", "2", "line"}));
  vsolve->callback([&] {
    const Vertex4 v = vertex_from(alphas, units);
    const auto c = curve_for(v, branch, cfg.tol);
    const auto s = c.solve_from(0, units.in(rho1));
    std::cout << "class " << to_string(c.vertex_class()) << "\nbranch " << to_string(c.branch()) << "\n";
    for (int k = 0; k < 4; ++k) std::cout << "rho" << k + 1 << " " << units.out(s.rho[k]) << "\n";
    std::cout << "closure " << format_number(loop_closure_residual(v, s.rho)) << "\n";
  });

  auto* vinterval = vertex->add_subcommand("interval", "range of rho1 along a branch");
  vinterval->add_option("--alphas", alphas, "sector angles a1,a2,a3,a4")->required()->delimiter(',')->expected(4);
  vinterval->add_option("--branch", branch, "1, 2 or line")->check(CLI::IsMember({"1", "2", "line"}));
  vinterval->callback([&] {
    const Vertex4 v = vertex_from(alphas, units);
    const auto c = curve_for(v, branch, cfg.tol);
    const auto [lo, hi] = c.range(0);
    std::cout << "class " << to_string(c.vertex_class()) << "\nbranch " << to_string(c.branch()) << "\nrho1 ["
              << units.out(lo) << ", " << units.out(hi) << "]\n";
  });

  auto* unit = app.add_subcommand("unit", "two-vertex units")->require_subcommand(1);
  auto* solveff = unit->add_subcommand("solve-ff", "complete a flat-foldable unit");
  solveff->add_option("--alphas", alphas, "top sector angles a1,a2,a3")->required()->delimiter(',')->expected(3);
  solveff->add_option("--mode", mode, "unit mode")->required()->check(
      CLI::IsMember({"10a-1", "10a-2", "10b-1", "10b-2"}));
  solveff->callback([&] {
    const double a1 = units.in(alphas[0]), a2 = units.in(alphas[1]), a3 = units.in(alphas[2]);
    const Unit u = solve_ff_unit(a1, a2, a3, parse_mode(mode), cfg.tol);
    std::cout << "alpha4 " << units.out(ff_unit_alpha4(a1, a2, a3, parse_mode(mode))) << "\n" << dump(unit_to_json(u));
  });

  auto* uvalidate = unit->add_subcommand("validate", "check that a unit folds with one degree of freedom");
  uvalidate->add_option("FILE", file, "unit JSON")->required()->check(CLI::ExistingFile);
  uvalidate->add_option("--samples", samples, "sample count")->check(CLI::Range(2, 1000000));
  uvalidate->callback([&] {
    const Unit u = unit_from_json(read_json_file(file));
    const UnitValidation r = validate_unit(u, samples > 0 ? samples : cfg.samples, cfg.tol);
    std::cout << (r.valid ? "valid" : "invalid") << "\nrho [" << units.out(r.lo) << ", " << units.out(r.hi)
              << "]\nmax_residual " << format_number(r.max_residual) << "\nsamples " << r.samples << "\n";
    if (!r.valid) throw Exit{1};
  });

  auto* pattern = app.add_subcommand("pattern", "quadrilateral crease patterns")->require_subcommand(1);
  auto* pstitch = pattern->add_subcommand("stitch", "stitch a plan of unit columns into a pattern");
  pstitch->add_option("PLAN", file, "plan JSON")->required()->check(CLI::ExistingFile);
  pstitch->add_option("-o", out, "output FOLD file")->required();
  pstitch->callback([&] {
    const Stitched s = stitch(plan_from_json(read_json_file(file)), cfg.tol);
    write_text_file(out, dump(export_fold(s.pattern, {}, nullptr, cfg.tol)));
    std::cout << s.pattern.rows() << " x " << s.pattern.cols() << " vertices\nbranches "
              << branch_list(s.pattern.default_branches) << "\n";
  });

  auto* pcertify = pattern->add_subcommand("certify", "check rigid-foldability");
  pcertify->add_option("PATTERN", file, "FOLD file")->required()->check(CLI::ExistingFile);
  pcertify->add_option("--branches", branches_spec, "stored, all, per-column or per-vertex list")->required();
  pcertify->add_option("--samples", samples, "sample count")->check(CLI::Range(2, 1000000));
  pcertify->callback([&] {
    const FoldDoc doc = import_fold(read_json_file(file), cfg.tol);
    bool any = false;
    for (const BranchGrid& g : branch_choices(doc.pattern, branches_spec)) {
      std::cout << "branches " << branch_list(g) << ": ";
      try {
        const auto r = certify(doc.pattern, g, samples > 0 ? samples : cfg.samples, cfg.tol);
        std::cout << (r.rigid_foldable ? "rigid-foldable" : "not rigid-foldable") << ", driving angle ["
                  << units.out(r.lo) << ", " << units.out(r.hi) << "], max residual "
                  << format_number(r.max_residual) << "\n";
        any = any || r.rigid_foldable;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Usage) throw;
        std::cout << "not rigid-foldable, " << e.what() << "\n";
      }
    }
    if (!any) throw Exit{1};
  });

  auto* pcount = pattern->add_subcommand("count", "degrees of freedom and branch count of a plan");
  pcount->add_option("PLAN", file, "plan JSON")->required()->check(CLI::ExistingFile);
  pcount->callback([&] {
    const DofReport r = count_dof(plan_from_json(read_json_file(file)), cfg.tol, cfg.dof);
    std::cout << r.caption << "\n";
    if (r.negative) throw Exit{1};
  });

  auto* psweep = pattern->add_subcommand("sweep", "export frames of the folding motion");
  psweep->add_option("PATTERN", file, "FOLD file")->required()->check(CLI::ExistingFile);
  psweep->add_option("--frames", frames, "frame count")->check(CLI::Range(1, 100000));
  psweep->add_option("--out-dir", out, "output directory");
  psweep->add_option("--format", format, "obj or fold")->check(CLI::IsMember({"obj", "fold"}));
  psweep->add_option("--branches", branches_spec, "stored or a per-column or per-vertex list");
  psweep->callback([&] {
    const FoldDoc doc = import_fold(read_json_file(file), cfg.tol);
    if (branches_spec == "all") throw Error(ErrorCode::Usage, "--branches: sweep needs a single branch choice");
    const BranchGrid g = branch_choices(doc.pattern, branches_spec).front();
    const SweepResult r = sweep(doc.pattern, g, frames > 0 ? frames : cfg.frames, 1.0, cfg.tol);
    const std::filesystem::path dir = out.empty() ? cfg.output_dir : out;
    std::filesystem::create_directories(dir);
    for (size_t k = 0; k < r.frames.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%03zu.%s", k, format.c_str());
      const FoldedState& f = r.frames[k];
      write_text_file((dir / name).string(), format == "obj" ? export_obj(doc.pattern, f.coords)
                                                            : dump(export_fold(doc.pattern, {}, &f, cfg.tol)));
    }
    std::cout << r.frames.size() << " frames up to " << units.out(r.endpoint) << "\nmax rigidity "
              << format_number(r.max_rigidity) << "\nmax closure " << format_number(r.max_closure) << "\n";
  });

  auto* psvg = pattern->add_subcommand("svg", "draw the crease pattern");
  psvg->add_option("PATTERN", file, "FOLD file")->required()->check(CLI::ExistingFile);
  psvg->add_option("-o", out, "output SVG file")->required();
  psvg->add_option("--rho", rho, "driving angle for the mountain/valley colouring");
  psvg->callback([&] {
    const FoldDoc doc = import_fold(read_json_file(file), cfg.tol);
    const std::vector<double> angles = rho ? Propagator(doc.pattern, doc.pattern.default_branches, cfg.tol)
                                                 .at(units.in(*rho))
                                                 .crease
                                           : doc.crease;
    write_text_file(out, export_svg(doc.pattern, mv_assignment(doc.pattern, angles, cfg.tol)));
  });

  try {
    cfg = load_config();
    units.degrees = cfg.degrees;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Usage || e.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
