#pragma once

// Moebius invariants of a conformally parametrized torus in S^4: normalized
// lift, dual lift, Hopf differential kappa, Schwarzian c, normal frame and
// connection, plus the integrability diagnostics built from them.

#include <functional>
#include <optional>

#include "dslab/normal.hpp"
#include "dslab/surfaces.hpp"

namespace dslab {

inline constexpr double kTolConf = 1e-6;

/// max_p |<psi_z,psi_z>| / <psi_z,psi_zbar>
double conformality_residual(const VecField& psi);

/// psi * exp(-u), u = log(2 <psi_z,psi_zbar>) / 2. Throws NotConformal or
/// NotFuturePointing.
LiftField normalized_lift(const LiftField& raw, double tol_conf = kTolConf);

/// Null section with <psi,psi_hat> = -1 and <d psi, psi_hat> = 0, in the span
/// of psi, psi_x, psi_y, psi_zzbar. Throws DegenerateFrame.
VecField dual_lift(const VecField& psi);

struct NormalFrame {
  VecField xi1, xi2;
  /// Index of the constant ambient vector projected to build xi2.
  int seed_axis = 0;
};

/// Orthonormal frame of the Moebius normal bundle of an S^4 surface with
/// J xi1 = xi2. xi2 is the normalized projection of the first constant basis
/// vector (e5, e4, ...) that stays transverse over the whole grid; xi1 is its
/// oriented complement. For surfaces in the standard S^3, xi2 = e5.
NormalFrame normal_frame(const VecField& psi, const VecField& psi_hat);

struct InvariantDiagnostics {
  double conformality = 0;      // input, before normalization
  double normalization = 0;     // | <psi_z,psi_zbar> - 1/2 |
  double dual = 0;              // defining conditions of psi_hat
  double kappa_orthogonality = 0;
  double frame_orthonormality = 0;
  double lightcone = 0;
  double spectral_tail = 0;
};

struct InvariantData {
  LiftField lift;  // normalized, S^4
  VecField psi_hat;
  VecField xi1, xi2;
  NormalSection kappa;
  Field c;
  Field rho;
  /// e^{i theta} for the chart z~ = e^{-i theta} z the data refers to.
  cplx phase = 1.0;
  /// Set when the surface lies in the standard S^3 (last coordinate zero).
  std::optional<S3Context> s3;
  InvariantDiagnostics diag;

  const TorusGrid& grid() const { return lift.grid(); }
  NormalCalculus calculus() const { return NormalCalculus(rho, phase); }
  Field dz(const Field& f) const { return d_z(f, phase); }
  Field dzb(const Field& f) const { return d_zbar(f, phase); }
  /// kappa as an ambient (complex) vector field.
  VecField kappa_ambient() const { return to_ambient(kappa, xi1, xi2); }
};

/// Full pipeline. S^3 lifts are embedded first. `theta` selects the rotated
/// chart z~ = e^{-i theta} z; the lattice itself is not resampled.
InvariantData compute_invariants(const LiftField& raw, double theta = 0.0, double tol_conf = kTolConf);

/// D_z kappa by the frame route (components plus connection terms).
NormalSection Dz_kappa(const InvariantData& inv);
/// D_z kappa by projecting the ambient derivative of kappa to the normal bundle.
NormalSection Dz_kappa_projected(const InvariantData& inv);

struct IntegrabilityResiduals {
  double gauss = 0, codazzi = 0, ricci = 0;
};

IntegrabilityResiduals integrability_residuals(const InvariantData& inv);

struct FrameEquationResiduals {
  double psi_zzbar = 0;  // psi_zzbar + |kappa|^2 psi - psi_hat / 2
  double psi_hat_z = 0;  // psi_hat_z + 2|kappa|^2 psi_z + c psi_zbar - 2 D_zbar kappa
};

FrameEquationResiduals frame_equation_residuals(const InvariantData& inv);

/// Reinterpret the data in the chart z~ = e^{-i theta} z.
InvariantData transform_invariants(const InvariantData& inv, double theta);

/// S_z(g) = (g''/g')' - (g''/g')^2 / 2 at the grid points z = x + i y.
/// Derivatives come from trapezoidal Cauchy integrals on small circles,
/// which converge geometrically for holomorphic g.
Field schwarzian_of_map(const std::function<cplx(cplx)>& g, const TorusGrid& grid, double radius = 0.25);

/// integral of <kappa, kappa-bar> dx dy
double willmore_energy(const InvariantData& inv);

struct DegreeObstruction {
  cplx integral;
  bool trivial = false;
};

DegreeObstruction degree_obstruction(const InvariantData& inv, double tol_solv = kTolSolv);

/// max |kappa|
double kappa_sup(const InvariantData& inv);

/// |kappa|^2 = <kappa, kappa-bar>
Field kappa_norm2(const InvariantData& inv);

}  // namespace dslab
