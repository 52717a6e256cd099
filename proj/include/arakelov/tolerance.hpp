#pragma once

namespace arakelov {

// Global numeric tolerances. The CLI can override them per job via --tol-* flags.
struct Tolerances {
  double effectivity = 1e-9;  // absolute, on d_P and xi_sigma
  double lp_duality = 1e-8;   // LP certificate residuals
  double quadrature = 1e-11;  // relative stability of radial quadrature
};

}  // namespace arakelov
