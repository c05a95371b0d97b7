#pragma once

#include <string>

#include "quadfold/io.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(QUADFOLD_DATA_DIR) + "/" + name; }

inline quadfold::StitchPlan plan(const std::string& name) {
  return quadfold::plan_from_json(quadfold::read_json_file(data(name)));
}

inline quadfold::StitchPlan fig7() { return plan("fig7_plan.json"); }
inline quadfold::StitchPlan fig8() { return plan("fig8_plan.json"); }

}  // namespace fixtures
