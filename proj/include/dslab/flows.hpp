#pragma once

// Davey-Stewartson flow on conformal tori in S^4: velocity assembly, the
// induced first-order change of (kappa, c, D), and time integration of lifts.

#include <vector>

#include "dslab/invariants.hpp"

namespace dslab {

/// Infinitesimal deformation psi' = a psi + b psi_z + conj(b) psi_zbar + sigma,
/// together with a normal bundle rotation chi.
struct FlowVelocity {
  NormalSection sigma;
  Field b;
  Field a;
  Field chi;
};

/// sigma = J kappa + J kappa-bar, conj(b) the zero-mean solution of
/// d_z conj(b) = 2 <J kappa-bar, kappa>, a = -Re(b_z), chi = 0.
FlowVelocity ds_velocity(const InvariantData& inv, double tol_solv = kTolSolv);

/// sigma = 0, b = 0, chi = 1.
FlowVelocity zeroth_flow(const TorusGrid& grid);

/// Ambient velocity of the lift; real-valued and tangent to the lightcone.
VecField lift_velocity(const InvariantData& inv, const FlowVelocity& v);

struct InvariantRates {
  NormalSection kappa;
  Field c;
  /// Coefficient r in D'_z xi = r J xi.
  Field connection;
};

InvariantRates deform_invariants(const InvariantData& inv, const FlowVelocity& v);

/// Reparametrization by the constant field b0.
InvariantRates first_flow(const InvariantData& inv, cplx b0);

enum class Scheme { Euler, RK4 };

Scheme parse_scheme(const std::string& s);
const char* scheme_name(Scheme s);

struct FlowRecord {
  double t = 0;
  double conformality = 0;
  double willmore = 0;
  double c_sup = 0;
  double kappa_sup = 0;
  double gauss = 0, codazzi = 0, ricci = 0;
};

using FlowTrace = std::vector<FlowRecord>;

inline constexpr double kTolStep = 1e-4;

struct EvolveResult {
  LiftField psi;
  FlowTrace trace;
};

/// Integrates the flow. Every step ends with a projection back to the
/// lightcone and renormalization. Throws StepRejected when the conformality
/// residual exceeds tol_step (or a stage cannot be evaluated).
EvolveResult evolve(const LiftField& psi0, double dt, int steps, Scheme scheme = Scheme::RK4,
                    double tol_step = kTolStep);

/// One integration step, no monitoring.
LiftField flow_step(const LiftField& psi, double dt, Scheme scheme = Scheme::RK4, double tol_step = kTolStep);

struct FlowConsistency {
  double c = 0;        // relative sup discrepancy of c'
  double kappa2 = 0;   // relative sup discrepancy of (|kappa|^2)'
  double total() const { return std::max(c, kappa2); }
};

/// Central differences of c and |kappa|^2 over one step of +-dt against the
/// closed-form rates.
FlowConsistency flow_consistency(const LiftField& psi, double dt);

}  // namespace dslab
