#include "dslab/invariants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace dslab {

namespace {

struct Tangents {
  VecField x, y;
};

VecField real_part(const VecField& v) {
  VecField out(v);
  for (int c = 0; c < out.dim(); ++c) out[c] = out[c].real();
  return out;
}

Tangents tangents(const VecField& psi) { return {real_part(d_x(psi)), real_part(d_y(psi))}; }

double real_at(const Field& f, std::size_t p) { return f[p].real(); }

}  // namespace

double conformality_residual(const VecField& psi) {
  const Tangents t = tangents(psi);
  const Field e = mink_dot(t.x, t.x), g = mink_dot(t.y, t.y), f = mink_dot(t.x, t.y);
  double worst = 0;
  for (std::size_t p = 0; p < e.size(); ++p) {
    const double ee = real_at(e, p), gg = real_at(g, p), ff = real_at(f, p);
    worst = std::max(worst, std::hypot(ee - gg, 2.0 * ff) / (ee + gg));
  }
  return worst;
}

LiftField normalized_lift(const LiftField& raw, double tol_conf) {
  const VecField& psi = raw.psi;
  for (std::size_t p = 0; p < psi.grid().size(); ++p) {
    if (!(psi[0][p].real() > 0)) {
      throw Error(ErrorCode::NotFuturePointing, "lift is not future pointing at grid point " + std::to_string(p));
    }
  }
  const double conf = conformality_residual(psi);
  if (!(conf <= tol_conf)) {
    throw Error(ErrorCode::NotConformal, "lift is not conformal: residual " + std::to_string(conf) +
                                             " exceeds tolerance " + std::to_string(tol_conf));
  }
  const Tangents t = tangents(psi);
  const Field e = mink_dot(t.x, t.x), g = mink_dot(t.y, t.y);
  Field scale(psi.grid());
  for (std::size_t p = 0; p < scale.size(); ++p) {
    // <psi_z, psi_zbar> = (E + G) / 4 and we want it to be 1/2.
    scale[p] = 1.0 / std::sqrt(0.5 * (real_at(e, p) + real_at(g, p)));
  }
  LiftField out{psi, true};
  out.psi *= scale;
  return out;
}

VecField dual_lift(const VecField& psi) {
  const Tangents t = tangents(psi);
  const VecField lap = real_part(d_x(t.x) + d_y(t.y));
  const int n = psi.sphere_dim();
  VecField out(psi.grid(), n);
  for (std::size_t p = 0; p < psi.grid().size(); ++p) {
    const MinkVec v = psi.real_point(p), tx = t.x.real_point(p), ty = t.y.real_point(p);
    const double e = mink_inner(tx, tx), f = mink_inner(tx, ty), g = mink_inner(ty, ty);
    const double det = e * g - f * f;
    if (!(det > 1e-12 * (e * e + g * g))) {
      throw Error(ErrorCode::DegenerateFrame, "dual_lift: tangent plane degenerates at grid point " + std::to_string(p));
    }
    MinkVec m = lap.real_point(p);
    const double mx = mink_inner(m, tx), my = mink_inner(m, ty);
    const double cx = (g * mx - f * my) / det, cy = (e * my - f * mx) / det;
    m -= cx * tx;
    m -= cy * ty;
    const double s = mink_inner(v, m);
    if (!(std::abs(s) > 1e-12 * std::sqrt(m.euclidean_norm2() * v.euclidean_norm2()))) {
      throw Error(ErrorCode::DegenerateFrame, "dual_lift: mean curvature sphere degenerates at grid point " + std::to_string(p));
    }
    m *= -1.0 / s;
    const double alpha = 0.5 * mink_inner(m, m);
    out.set_point(p, alpha * v + m);
  }
  return out;
}

namespace {

// Orientation convention for J: chosen so that the homogeneous tori have
// negative Hopf differential against xi1.
constexpr double kOrientation = -1.0;

/// Minkowski-orthogonal complement of five vectors in R^{5,1} via cofactors.
MinkVec complement(const std::array<MinkVec, 5>& rows) {
  Eigen::Matrix<double, 5, 6> a;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 6; ++c) a(r, c) = rows[r][c];
  MinkVec w(4);
  for (int c = 0; c < 6; ++c) {
    Eigen::Matrix<double, 5, 5> minor;
    for (int cc = 0, k = 0; cc < 6; ++cc) {
      if (cc == c) continue;
      minor.col(k++) = a.col(cc);
    }
    const double cof = ((c % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
    w[c] = (c == 0 ? -1.0 : 1.0) * cof;
  }
  return w;
}

}  // namespace

NormalFrame normal_frame(const VecField& psi, const VecField& psi_hat) {
  if (psi.sphere_dim() != 4) throw Error(ErrorCode::DimensionMismatch, "normal_frame expects an S^4 lift");
  const Tangents t = tangents(psi);
  const TorusGrid& grid = psi.grid();
  const std::size_t np = grid.size();

  auto project = [&](std::size_t p, const MinkVec& w) {
    const MinkVec v = psi.real_point(p), vh = psi_hat.real_point(p);
    const MinkVec tx = t.x.real_point(p), ty = t.y.real_point(p);
    MinkVec out = w + mink_inner(w, vh) * v + mink_inner(w, v) * vh;
    const double e = mink_inner(tx, tx), f = mink_inner(tx, ty), g = mink_inner(ty, ty);
    const double det = e * g - f * f;
    const double mx = mink_inner(out, tx), my = mink_inner(out, ty);
    out -= ((g * mx - f * my) / det) * tx;
    out -= ((e * my - f * mx) / det) * ty;
    return out;
  };

  int best_axis = -1;
  double best_min = 0;
  for (int axis = 5; axis >= 0; --axis) {
    const MinkVec w = MinkVec::basis(4, axis);
    double worst = INFINITY;
    for (std::size_t p = 0; p < np; ++p) {
      const MinkVec q = project(p, w);
      worst = std::min(worst, std::sqrt(std::max(0.0, mink_inner(q, q))));
    }
    if (worst > best_min) {
      best_min = worst;
      best_axis = axis;
    }
    if (worst >= 0.1) break;
  }
  if (best_axis < 0 || best_min < 1e-3) {
    throw Error(ErrorCode::DegenerateFrame, "normal_frame: no constant vector projects transversally everywhere");
  }

  NormalFrame frame{VecField(grid, 4), VecField(grid, 4), best_axis};
  const MinkVec w = MinkVec::basis(4, best_axis);
  for (std::size_t p = 0; p < np; ++p) {
    MinkVec q = project(p, w);
    q *= 1.0 / std::sqrt(mink_inner(q, q));
    frame.xi2.set_point(p, q);
    MinkVec r = complement({psi.real_point(p), psi_hat.real_point(p), t.x.real_point(p), t.y.real_point(p), q});
    r *= kOrientation / std::sqrt(mink_inner(r, r));
    frame.xi1.set_point(p, r);
  }
  return frame;
}

InvariantData compute_invariants(const LiftField& raw_in, double theta, double tol_conf) {
  const LiftField raw = raw_in.sphere_dim() == 3 ? embed_s3(raw_in).lift : raw_in;
  InvariantData inv;
  inv.diag.conformality = conformality_residual(raw.psi);
  inv.lift = normalized_lift(raw, tol_conf);
  const VecField& psi = inv.lift.psi;
  inv.psi_hat = dual_lift(psi);
  NormalFrame frame = normal_frame(psi, inv.psi_hat);
  inv.xi1 = std::move(frame.xi1);
  inv.xi2 = std::move(frame.xi2);
  inv.phase = std::polar(1.0, theta);

  const VecField psi_z = d_z(psi, inv.phase);
  const VecField psi_zb = d_zbar(psi, inv.phase);
  const VecField psi_zz = d_z(psi_z, inv.phase);
  inv.c = 2.0 * mink_dot(psi_zz, inv.psi_hat);
  VecField kappa_amb = psi_zz;
  kappa_amb.add_scaled(0.5 * inv.c, psi);
  inv.kappa = NormalSection(mink_dot(kappa_amb, inv.xi1), mink_dot(kappa_amb, inv.xi2));
  inv.rho = mink_dot(d_z(inv.xi1, inv.phase), inv.xi2);

  if (psi[5].sup_norm() == 0.0) inv.s3 = S3Context{MinkVec::basis(4, 5)};

  // Diagnostics
  const Field h = mink_dot(psi_z, psi_zb);
  double norm_def = 0;
  for (std::size_t p = 0; p < h.size(); ++p) norm_def = std::max(norm_def, std::abs(h[p] - 0.5));
  inv.diag.normalization = norm_def;

  const Tangents t = tangents(psi);
  inv.diag.dual = std::max({mink_dot(inv.psi_hat, inv.psi_hat).sup_norm(), (mink_dot(psi, inv.psi_hat) + 1.0).sup_norm(),
                            mink_dot(t.x, inv.psi_hat).sup_norm(), mink_dot(t.y, inv.psi_hat).sup_norm()});

  const VecField tangential = kappa_amb - inv.kappa_ambient();
  inv.diag.kappa_orthogonality =
      std::max({mink_dot(kappa_amb, psi).sup_norm(), mink_dot(kappa_amb, psi_z).sup_norm(),
                mink_dot(kappa_amb, psi_zb).sup_norm(), mink_dot(kappa_amb, inv.psi_hat).sup_norm(),
                tangential.sup_norm()});

  inv.diag.frame_orthonormality =
      std::max({(mink_dot(inv.xi1, inv.xi1) + (-1.0)).sup_norm(), (mink_dot(inv.xi2, inv.xi2) + (-1.0)).sup_norm(),
                mink_dot(inv.xi1, inv.xi2).sup_norm()});
  inv.diag.lightcone = lightcone_defect(psi);
  inv.diag.spectral_tail = spectral_tail(psi);
  return inv;
}

NormalSection Dz_kappa(const InvariantData& inv) { return inv.calculus().Dz(inv.kappa); }

NormalSection Dz_kappa_projected(const InvariantData& inv) {
  const VecField dk = d_z(inv.kappa_ambient(), inv.phase);
  return {mink_dot(dk, inv.xi1), mink_dot(dk, inv.xi2)};
}

Field kappa_norm2(const InvariantData& inv) { return dot(inv.kappa, inv.kappa.conj()); }

double kappa_sup(const InvariantData& inv) { return std::sqrt(kappa_norm2(inv).real().sup_norm()); }

IntegrabilityResiduals integrability_residuals(const InvariantData& inv) {
  const NormalCalculus D = inv.calculus();
  const NormalSection& k = inv.kappa;
  const NormalSection kb = k.conj();
  IntegrabilityResiduals r;

  Field gauss = 0.5 * inv.dzb(inv.c) - 2.0 * inv.dz(kappa_norm2(inv)) - dot(D.Dz(kb), k) + dot(kb, D.Dz(k));
  r.gauss = gauss.sup_norm();

  NormalSection cod = D.Dzb(D.Dzb(k)) + (0.5 * inv.c.conj()) * k;
  r.codazzi = cod.im().sup_norm();

  Field ricci = inv.dz(inv.rho.conj()) - inv.dzb(inv.rho) - 2.0 * dot(kb.J(), k);
  r.ricci = ricci.sup_norm();
  return r;
}

FrameEquationResiduals frame_equation_residuals(const InvariantData& inv) {
  const VecField& psi = inv.lift.psi;
  const VecField psi_z = d_z(psi, inv.phase);
  const VecField psi_zb = d_zbar(psi, inv.phase);
  const Field k2 = kappa_norm2(inv);
  FrameEquationResiduals r;

  VecField e1 = d_zbar(psi_z, inv.phase);
  e1.add_scaled(k2, psi);
  e1 -= 0.5 * inv.psi_hat;
  r.psi_zzbar = e1.sup_norm();

  VecField e2 = d_z(inv.psi_hat, inv.phase);
  e2.add_scaled(2.0 * k2, psi_z);
  e2.add_scaled(inv.c, psi_zb);
  e2 -= 2.0 * to_ambient(inv.calculus().Dzb(inv.kappa), inv.xi1, inv.xi2);
  r.psi_hat_z = e2.sup_norm();
  return r;
}

InvariantData transform_invariants(const InvariantData& inv, double theta) {
  InvariantData out = inv;
  const cplx e1 = std::polar(1.0, theta), e2 = std::polar(1.0, 2.0 * theta);
  out.kappa *= e2;
  out.c *= e2;
  out.rho *= e1;
  out.phase *= e1;
  return out;
}

Field schwarzian_of_map(const std::function<cplx(cplx)>& g, const TorusGrid& grid, double radius) {
  constexpr int kNodes = 32;
  Field out(grid);
  std::array<cplx, kNodes> w{};
  for (int q = 0; q < kNodes; ++q) w[q] = std::polar(1.0, 2.0 * std::numbers::pi * q / kNodes);
  for (int j = 0; j < grid.n1; ++j) {
    for (int k = 0; k < grid.n2; ++k) {
      const cplx z0(grid.x(j), grid.y(k));
      std::array<cplx, 4> d{};  // Taylor coefficients a_1..a_3 (index 1..3)
      for (int q = 0; q < kNodes; ++q) {
        const cplx gv = g(z0 + radius * w[q]);
        for (int n = 1; n <= 3; ++n) d[n] += gv * std::pow(std::conj(w[q]), n);
      }
      const cplx g1 = d[1] / (kNodes * radius);
      const cplx g2 = 2.0 * d[2] / (kNodes * radius * radius);
      const cplx g3 = 6.0 * d[3] / (kNodes * radius * radius * radius);
      if (!(std::abs(g1) >= 1e-12)) {
        throw Error(ErrorCode::InvalidArgument, "schwarzian_of_map: g' vanishes at grid point (" + std::to_string(j) + "," +
                                                    std::to_string(k) + ")");
      }
      const cplx q2 = g2 / g1;
      out.at(j, k) = g3 / g1 - 1.5 * q2 * q2;
    }
  }
  return out;
}

double willmore_energy(const InvariantData& inv) { return integrate(kappa_norm2(inv)).real(); }

DegreeObstruction degree_obstruction(const InvariantData& inv, double tol_solv) {
  DegreeObstruction d;
  d.integral = integrate(dot(inv.kappa.conj().J(), inv.kappa));
  const double ks = kappa_sup(inv);
  d.trivial = std::abs(d.integral) < tol_solv * inv.grid().area() * ks * ks;
  return d;
}

}  // namespace dslab
