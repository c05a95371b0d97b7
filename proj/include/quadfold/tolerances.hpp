#pragma once

namespace quadfold {

// Every numeric threshold used by the library lives here so that a
// configuration file can override them in one place.
struct Tolerances {
  double angle = 1e-9;       // angle-sum equalities
  double class_band = 1e-6;  // near-degenerate warning band
  double eval = 1e-9;        // formula vs. oracle agreement
  double clamp = 1e-12;      // arccos argument overshoot allowed
  double root = 1e-10;       // interval endpoint bisection
  double unit = 1e-8;        // unit compatibility residual
  double compat = 1e-8;      // cut-crease compatibility residual
  double rigid = 1e-9;       // relative panel rigidity
  double closure = 1e-9;     // loop-closure residual
  double flat = 1e-9;        // below this a fold angle is labelled flat
  double dir = 1e-9;         // parallel-crease test (radians)
};

}  // namespace quadfold
