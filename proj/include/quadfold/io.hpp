#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "quadfold/foldability.hpp"
#include "quadfold/realization.hpp"

namespace quadfold {

using Json = nlohmann::json;

// Shortest decimal that round-trips a double rounded to 12 significant
// digits, independent of the locale.
std::string format_number(double x);
double round12(double x);

// Angles are stored in degrees in every document.
Json unit_to_json(const Unit& u);
Unit unit_from_json(const Json& j);

StitchPlan plan_from_json(const Json& j);
Json plan_to_json(const StitchPlan& plan);

struct FoldDoc {
  QuadPattern pattern;
  std::vector<double> crease;               // radians per edge id (zeros if absent)
  std::optional<Eigen::MatrixX3d> folded;   // present for folded frames
};

// Crease pattern with assignments from the given angles (flat if empty); a
// folded state adds its 3D coordinates and becomes a folded-form frame.
Json export_fold(const QuadPattern& p, const std::vector<double>& crease_angles = {},
                 const FoldedState* folded = nullptr, const Tolerances& tol = {});
FoldDoc import_fold(const Json& doc, const Tolerances& tol = {});
// Compact, key-sorted text of a document.
std::string dump(const Json& j);

std::string export_obj(const QuadPattern& p, const Eigen::MatrixX3d& coords);
std::string export_svg(const QuadPattern& p, const std::vector<Assignment>& labels);

struct Config {
  Tolerances tol;
  DofTable dof;
  int samples = 200;
  int frames = 30;
  std::string output_dir = ".";
  bool degrees = true;
};

Config config_from_json(const Json& j);
// Reads the file named by QUADFOLD_CONFIG, or returns the defaults.
Config load_config();

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace quadfold
