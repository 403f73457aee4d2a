#include "dslab/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace dslab {

Field scalar_hopf(const InvariantData& inv) {
  const double ks = kappa_sup(inv);
  if (!inv.s3 || !(inv.kappa.s2.sup_norm() <= 1e-8 * std::max(ks, 1.0))) {
    throw Error(ErrorCode::NotInS3, "quartic: surface does not lie in the standard 3-sphere");
  }
  return inv.kappa.s1;
}

Field bryant_q(const InvariantData& inv) {
  const Field k = scalar_hopf(inv);
  const Field kzb = inv.dzb(k);
  const Field kz = inv.dz(k);
  return 4.0 * (k * inv.dz(kzb) + (k * k.conj()) * k * k - kzb * kz);
}

double holomorphicity_residual(const Field& q, cplx phase) {
  return d_zbar(q, phase).sup_norm() / (q.sup_norm() + 1e-300);
}

const char* branch_name(VossBranch b) {
  switch (b) {
    case VossBranch::Willmore: return "willmore";
    case VossBranch::Cmc: return "cmc";
    case VossBranch::Neither: return "neither";
  }
  return "neither";
}

namespace {

double masked_sup(const Field& f, const std::vector<bool>& mask) {
  double m = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (!mask[p]) m = std::max(m, std::abs(f[p]));
  }
  return m;
}

Field lambda_field(const InvariantData& inv, const Field& k, const std::vector<bool>& mask) {
  const Field num = inv.dzb(inv.dzb(k)) + (0.5 * inv.c.conj()) * k;
  Field lam(k.grid());
  for (std::size_t p = 0; p < k.size(); ++p) {
    if (!mask[p]) lam[p] = num[p] / k[p];
  }
  return lam;
}

}  // namespace

QuarticReport voss_classify(const InvariantData& inv, double umbilic_eps, double tol) {
  const Field k = scalar_hopf(inv);
  QuarticReport rep;
  rep.umbilic_mask = umbilic_mask(inv, umbilic_eps);
  const std::size_t free_points = static_cast<std::size_t>(std::count(rep.umbilic_mask.begin(), rep.umbilic_mask.end(), false));
  if (free_points == 0) throw Error(ErrorCode::AllUmbilic, "voss_classify: every grid point is umbilic");

  rep.q = bryant_q(inv);
  rep.holo_residual = holomorphicity_residual(rep.q, inv.phase);
  rep.lambda = lambda_field(inv, k, rep.umbilic_mask);

  double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;
  cplx sum = 0;
  for (std::size_t p = 0; p < k.size(); ++p) {
    if (rep.umbilic_mask[p]) continue;
    const cplx l = rep.lambda[p];
    sum += l;
    re_lo = std::min(re_lo, l.real());
    re_hi = std::max(re_hi, l.real());
    im_lo = std::min(im_lo, l.imag());
    im_hi = std::max(im_hi, l.imag());
  }
  rep.lambda_mean = sum / static_cast<double>(free_points);
  rep.lambda_spread = (re_hi - re_lo) + (im_hi - im_lo);

  const double ks = k.sup_norm();
  rep.lambda_antiholo_residual = masked_sup(inv.dz(rep.lambda), rep.umbilic_mask) / (ks * ks * ks);
  const double lam_rel = masked_sup(rep.lambda, rep.umbilic_mask) / (ks * ks);

  if (lam_rel < tol) {
    rep.branch = VossBranch::Willmore;
  } else if (rep.holo_residual < tol && rep.lambda_antiholo_residual < tol) {
    rep.branch = VossBranch::Cmc;
  } else {
    rep.branch = VossBranch::Neither;
  }
  return rep;
}

ScalarIntegrability scalar_integrability(const InvariantData& inv, double umbilic_eps) {
  const Field k = scalar_hopf(inv);
  const Field kb = k.conj();
  const Field kz = inv.dz(k), kzb = inv.dzb(k);
  const Field k2 = k * kb;
  const double ks = k.sup_norm();
  const double s3 = ks * ks * ks;
  ScalarIntegrability out;

  out.gauss = (0.5 * inv.dzb(inv.c) - inv.dz(k2) - 2.0 * inv.dz(kb) * k).sup_norm() / s3;

  const Field kzbzb = inv.dzb(kzb);
  out.codazzi = (kzbzb + (0.5 * inv.c.conj()) * k).imag().sup_norm() / s3;

  const auto mask = umbilic_mask(inv, umbilic_eps);
  const Field lhs = k * k * inv.dz(lambda_field(inv, k, mask));
  const Field rhs = k * inv.dz(kzbzb) + inv.dzb(k2) * k * k + 2.0 * k2 * k * kzb - kzbzb * kz;
  out.identity = masked_sup(lhs - rhs, mask) / (s3 * ks * ks);
  return out;
}

}  // namespace dslab
