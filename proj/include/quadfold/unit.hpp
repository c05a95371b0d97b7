#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadfold/vertex.hpp"

namespace quadfold {

// Command-line tokens 10a-1, 10a-2, 10b-1, 10b-2 in that order.
enum class FFUnitMode { APlus, AMinus, CPlus, CMinus };

FFUnitMode parse_mode(const std::string& s);
const char* mode_name(FFUnitMode m);

enum class UnitKind { FlatFoldable, FlatFoldableBasic, StraightLine, GeneralBasic, Custom };

const char* to_string(UnitKind k);

// Two degree-4 vertices joined by one crease. The top vertex uses the grid
// labelling (c1 = N, c2 = W, c3 = S, c4 = E), so its c3 is the shared crease.
// The bottom vertex is stored in the same labelling turned half a turn
// (c1 = S, c2 = E, c3 = N, c4 = W), so its c3 is the shared crease too.
struct Unit {
  Vertex4 top;
  Vertex4 bottom;
  std::array<int, 2> signs{1, 1};  // rho_W(top) = s[0] rho_W(bottom), same for E
  BranchId branch_top = BranchId::Branch1;
  BranchId branch_bottom = BranchId::Branch1;
  UnitKind kind = UnitKind::Custom;
  double shared_length = 1.0;

  Vertex4 bottom_grid() const { return bottom.shifted(2); }
  Unit swapped() const;
};

// Folding angles in slot order: shared, top W, top N, top E, bottom W,
// bottom S, bottom E.
using UnitState = std::array<double, 7>;

struct UnitValidation {
  bool valid = false;
  double max_residual = 0;
  double lo = 0, hi = 0;  // range of the top vertex driving angle
  int samples = 0;
  bool decoupled = false;  // shared crease stays flat; sides matched directly
  std::vector<UnitState> states;
};

UnitValidation validate_unit(const Unit& u, int n_samples = 200, const Tolerances& tol = {});

double ff_unit_alpha4(double a1, double a2, double a3, FFUnitMode mode);
double ff_unit_residual(double a1, double a2, double a3, double a4, FFUnitMode mode);
Unit solve_ff_unit(double a1, double a2, double a3, FFUnitMode mode, const Tolerances& tol = {});

// One of the two mixed transmission conditions: a difference ratio
// (ta - tb)/(ta + tb) set equal to (1 + tc td)/(1 - tc td).
struct EquationWitness {
  double difference_side = 0;  // (ta - tb)/(ta + tb), always inside (-1, 1)
  double ratio_side = 0;       // (1 + ta tb)/(1 - ta tb), |.| > 1 or a pole
  bool pole = false;
  double margin = 0;
};

struct InfeasibilityReport {
  EquationWitness top_difference;  // top pair in difference form
  EquationWitness top_ratio;       // top pair in ratio form
  double margin = 0;
};

InfeasibilityReport infeasibility_witness(double a1, double a2, double a3, double a4);

Unit make_straightline_unit(const Vertex4& v, std::optional<BranchId> branch = {},
                            const Tolerances& tol = {});
Unit make_flatfoldable_basic_unit(double a1, double a2, BranchId branch = BranchId::Branch1,
                                  const Tolerances& tol = {});
Unit make_general_basic_unit(const Vertex4& v, BranchId branch, const Tolerances& tol = {});

}  // namespace quadfold
