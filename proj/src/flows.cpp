#include "dslab/flows.hpp"

#include <cmath>

namespace dslab {

FlowVelocity ds_velocity(const InvariantData& inv, double tol_solv) {
  const NormalSection& k = inv.kappa;
  const NormalSection jk = k.J();
  FlowVelocity v;
  v.sigma = jk + jk.conj();
  Field rhs = 2.0 * dot(k.conj().J(), k);
  // Solvability is judged against the scale of kappa, so round-off means on
  // surfaces with flat normal bundle do not count as an obstruction.
  const double ks = kappa_sup(inv);
  const cplx mean = rhs.mean();
  if (!(std::abs(mean) < tol_solv * ks * ks)) {
    throw Error(ErrorCode::Unsolvable, "ds_velocity: normal bundle degree obstruction does not vanish (mean " +
                                           std::to_string(std::abs(mean)) + ")");
  }
  rhs += -mean;
  v.b = solve_dbar(rhs, inv.phase, 1.0).conj();
  v.a = -inv.dz(v.b).real();
  v.chi = Field(inv.grid());
  return v;
}

FlowVelocity zeroth_flow(const TorusGrid& grid) {
  return {NormalSection(grid), Field(grid), Field(grid), Field(grid, 1.0)};
}

VecField lift_velocity(const InvariantData& inv, const FlowVelocity& v) {
  const VecField& psi = inv.lift.psi;
  VecField out = to_ambient(v.sigma, inv.xi1, inv.xi2);
  out.add_scaled(v.a, psi);
  out.add_scaled(v.b, d_z(psi, inv.phase));
  out.add_scaled(v.b.conj(), d_zbar(psi, inv.phase));
  for (int c = 0; c < out.dim(); ++c) out[c] = out[c].real();
  return out;
}

InvariantRates deform_invariants(const InvariantData& inv, const FlowVelocity& v) {
  const NormalCalculus D = inv.calculus();
  const NormalSection& k = inv.kappa;
  const NormalSection& s = v.sigma;
  const Field bb = v.b.conj();
  const Field bz = inv.dz(v.b);
  const NormalSection Dzk = D.Dz(k), Dzbk = D.Dzb(k);
  const NormalSection Dzs = D.Dz(s), Dzbs = D.Dzb(s);
  const Field cz = inv.dz(inv.c), czb = inv.dzb(inv.c);

  InvariantRates r;
  r.kappa = D.Dz(Dzs) + (0.5 * inv.c) * s + (1.5 * bz - 0.5 * inv.dzb(bb)) * k + v.b * Dzk + bb * Dzbk - v.chi * k.J();

  r.c = inv.dz(inv.dz(bz)) + 2.0 * inv.c * bz + v.b * cz + bb * czb + 16.0 * dot(s, k.conj()) * dot(k, k) +
        6.0 * (dot(D.Dzb(Dzs), k) - dot(Dzs, Dzbk)) + 2.0 * (dot(Dzbs, Dzk) - dot(s, D.Dzb(Dzk)));

  r.connection = inv.dz(v.chi) + 2.0 * dot(s.J(), Dzbk) + 2.0 * dot(k.J(), bb * k.conj() + Dzbs);
  return r;
}

InvariantRates first_flow(const InvariantData& inv, cplx b0) {
  const NormalCalculus D = inv.calculus();
  const cplx bb0 = std::conj(b0);
  InvariantRates r;
  r.kappa = b0 * D.Dz(inv.kappa) + bb0 * D.Dzb(inv.kappa);
  r.c = b0 * inv.dz(inv.c) + bb0 * inv.dzb(inv.c);
  r.connection = (2.0 * bb0) * dot(inv.kappa.J(), inv.kappa.conj());
  return r;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "euler") return Scheme::Euler;
  if (s == "rk4") return Scheme::RK4;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + s + "' (expected euler or rk4)");
}

const char* scheme_name(Scheme s) { return s == Scheme::Euler ? "euler" : "rk4"; }

namespace {

/// Pointwise move along psi_hat back onto the lightcone.
VecField lightcone_project(VecField chi, const VecField& psi_hat) {
  const Field q = mink_dot(chi, chi);
  const Field s = mink_dot(chi, psi_hat);
  Field t(q.grid());
  for (std::size_t p = 0; p < t.size(); ++p) t[p] = -0.5 * q[p].real() / s[p].real();
  chi.add_scaled(t, psi_hat);
  return chi;
}

/// Representative with unit time component. Renormalizing from it each step
/// keeps the aliasing error of the previous scale factor from feeding back.
LiftField canonical(const LiftField& l) {
  LiftField out{l.psi, false};
  Field inv(l.grid());
  for (std::size_t p = 0; p < inv.size(); ++p) inv[p] = 1.0 / l.psi[0][p].real();
  out.psi *= inv;
  return out;
}

[[noreturn]] void reject(const std::string& why) { throw Error(ErrorCode::StepRejected, "step rejected: " + why); }

/// Flow velocity extended to raw (unnormalized, slightly off-cone) lifts,
/// homogeneous of degree one in the lift.
VecField raw_velocity(const VecField& chi, const VecField& psi_hat, double tol_step) {
  LiftField raw{lightcone_project(chi, psi_hat), false};
  InvariantData inv;
  try {
    inv = compute_invariants(raw, 0.0, tol_step);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unsolvable) throw;
    reject(e.what());
  }
  VecField vel = lift_velocity(inv, ds_velocity(inv));
  vel *= raw.psi[0] / inv.lift.psi[0];
  return vel;
}

}  // namespace

LiftField flow_step(const LiftField& psi_in, double dt, Scheme scheme, double tol_step) {
  if (dt == 0.0) return psi_in;
  const LiftField start = psi_in.sphere_dim() == 3 ? embed_s3(psi_in).lift : psi_in;
  const VecField base = canonical(start).psi;
  LiftField psi;
  try {
    psi = normalized_lift(LiftField{base, false}, tol_step);
  } catch (const Error& e) {
    reject(e.what());
  }
  const VecField psi_hat = dual_lift(psi.psi);
  const VecField& y = psi.psi;

  VecField next;
  if (scheme == Scheme::Euler) {
    next = y;
    next.add_scaled(Field(y.grid(), dt), raw_velocity(y, psi_hat, tol_step));
  } else {
    const VecField k1 = raw_velocity(y, psi_hat, tol_step);
    const VecField k2 = raw_velocity(y + (0.5 * dt) * k1, psi_hat, tol_step);
    const VecField k3 = raw_velocity(y + (0.5 * dt) * k2, psi_hat, tol_step);
    const VecField k4 = raw_velocity(y + dt * k3, psi_hat, tol_step);
    next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  // The increment is taken between unit-time-component representatives and
  // truncated by the two-thirds rule; aliased near-Nyquist modes of the
  // velocity would otherwise grow without bound.
  VecField step = canonical(LiftField{std::move(next), false}).psi - base;
  for (int c = 0; c < step.dim(); ++c) {
    if (!step[c].all_finite()) reject("non-finite lift");
  }
  LiftField out{lightcone_project(base + spectral_filter(step), psi_hat), false};
  try {
    return normalized_lift(canonical(out), tol_step);
  } catch (const Error& e) {
    reject(e.what());
  }
}

namespace {

FlowRecord monitor(double t, const InvariantData& inv) {
  const IntegrabilityResiduals r = integrability_residuals(inv);
  return {t, inv.diag.conformality, willmore_energy(inv), inv.c.sup_norm(), kappa_sup(inv), r.gauss, r.codazzi, r.ricci};
}

}  // namespace

EvolveResult evolve(const LiftField& psi0, double dt, int steps, Scheme scheme, double tol_step) {
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be non-negative");
  if (!std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be finite");
  EvolveResult res{psi0, {}};
  res.trace.push_back(monitor(0.0, compute_invariants(psi0)));
  for (int i = 1; i <= steps; ++i) {
    res.psi = flow_step(res.psi, dt, scheme, tol_step);
    InvariantData inv;
    try {
      inv = compute_invariants(res.psi, 0.0, tol_step);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Unsolvable) throw;
      reject(e.what());
    }
    res.trace.push_back(monitor(i * dt, inv));
  }
  return res;
}

FlowConsistency flow_consistency(const LiftField& psi, double dt) {
  if (!(dt > 0)) throw Error(ErrorCode::InvalidArgument, "flow_consistency needs dt > 0");
  const InvariantData inv = compute_invariants(psi);
  const InvariantRates rates = deform_invariants(inv, ds_velocity(inv));
  const Field pred_c = rates.c;
  const Field pred_k2 = 2.0 * dot(rates.kappa, inv.kappa.conj()).real();

  const InvariantData plus = compute_invariants(flow_step(inv.lift, dt));
  const InvariantData minus = compute_invariants(flow_step(inv.lift, -dt));
  const double h = 1.0 / (2.0 * dt);
  const Field fd_c = h * (plus.c - minus.c);
  const Field fd_k2 = h * (kappa_norm2(plus) - kappa_norm2(minus));

  const double k = kappa_sup(inv);
  const double floor = k * k * k * k;
  FlowConsistency out;
  out.c = spectral_filter(fd_c - pred_c).sup_norm() / std::max(pred_c.sup_norm(), floor);
  out.kappa2 = spectral_filter(fd_k2 - pred_k2).sup_norm() / std::max(pred_k2.sup_norm(), floor);
  return out;
}

}  // namespace dslab
