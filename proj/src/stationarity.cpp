#include "dslab/stationarity.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace dslab {

std::vector<bool> umbilic_mask(const InvariantData& inv, double eps) {
  const Field k2 = kappa_norm2(inv);
  const double thr = eps * eps * k2.real().sup_norm();
  std::vector<bool> mask(k2.size());
  for (std::size_t p = 0; p < k2.size(); ++p) mask[p] = !(k2[p].real() > thr);
  return mask;
}

namespace {

/// Parts of the stationarity system that do not depend on alpha, beta, mu.
struct System {
  const InvariantData* inv;
  std::vector<bool> mask;
  NormalSection Dzk, Dzbk, Jk;
  Field k2, q, cz, czb;
  NormalSection l16, l17;
  Field l18, l19, l21;
};

System assemble(const InvariantData& inv, const FlowVelocity& v, double umbilic_eps) {
  const NormalCalculus D = inv.calculus();
  const NormalSection& k = inv.kappa;
  const NormalSection kb = k.conj();
  const Field& b = v.b;
  const Field bb = b.conj();
  const Field& c = inv.c;
  System s;
  s.inv = &inv;
  s.mask = umbilic_mask(inv, umbilic_eps);
  s.Dzk = D.Dz(k);
  s.Dzbk = D.Dzb(k);
  s.Jk = k.J();
  s.k2 = kappa_norm2(inv);
  s.q = dot(kb, s.Jk);
  s.cz = inv.dz(c);
  s.czb = inv.dzb(c);
  const Field bz = inv.dz(b);

  s.l16 = (D.Dz(s.Dzk) + (0.5 * c) * k).J() + (1.5 * bz) * k + b * s.Dzk;
  s.l17 = (D.Dz(D.Dz(kb)) + (0.5 * c) * kb).J() - (0.5 * inv.dzb(bb)) * k + bb * s.Dzbk;

  const NormalSection DzJk = D.Dz(s.Jk);
  s.l18 = inv.dz(inv.dz(bz)) + 2.0 * c * bz + b * s.cz + 16.0 * dot(s.Jk, kb) * dot(k, k) +
          8.0 * (dot(D.Dzb(DzJk), k) - dot(DzJk, s.Dzbk));

  const NormalSection Jkb = kb.J();
  const NormalSection DzJkb = D.Dz(Jkb);
  s.l19 = bb * s.czb + 6.0 * (dot(D.Dzb(DzJkb), k) - dot(DzJkb, s.Dzbk)) +
          2.0 * (dot(D.Dzb(Jkb), s.Dzk) - dot(Jkb, D.Dzb(s.Dzk)));

  s.l21 = 2.0 * s.q * bb + 2.0 * dot(D.Dzb(kb), k) - 2.0 * dot(s.Dzbk, kb);
  return s;
}

struct Evaluation {
  NormalSection e16, e17;
  Field e18, e19, e20, e21;
  Field mu;
};

Evaluation evaluate(const System& s, cplx alpha, cplx beta) {
  const InvariantData& inv = *s.inv;
  const cplx ab = std::conj(alpha), bb = std::conj(beta);
  Evaluation e;
  // (16) without the mu term; mu is its pointwise Hermitian projection on J kappa.
  const NormalSection x16 = s.l16 - (alpha * s.Dzk + bb * s.Dzbk);
  const Field proj = dot(x16, s.Jk.conj());
  e.mu = Field(inv.grid());
  for (std::size_t p = 0; p < proj.size(); ++p) {
    if (!s.mask[p]) e.mu[p] = -proj[p] / s.k2[p].real();
  }
  const Field mub = e.mu.conj();
  e.e16 = x16 + e.mu * s.Jk;
  e.e17 = s.l17 - (beta * s.Dzk + ab * s.Dzbk) + mub * s.Jk;
  e.e18 = s.l18 - (alpha * s.cz + bb * s.czb);
  e.e19 = s.l19 - (beta * s.cz + ab * s.czb);
  e.e20 = (2.0 * bb) * s.q + inv.dz(e.mu);
  e.e21 = s.l21 - (2.0 * ab) * s.q - inv.dz(mub);
  return e;
}

struct Scales {
  double s3, s4;
};

Scales scales_for(const InvariantData& inv) {
  double k = kappa_sup(inv);
  if (!(k > 0)) k = 1.0;
  return {k * k * k, k * k * k * k};
}

void flatten(const Evaluation& e, const Scales& sc, std::vector<double>& out) {
  out.clear();
  auto push = [&](const Field& f, double scale) {
    for (std::size_t p = 0; p < f.size(); ++p) {
      out.push_back(f[p].real() / scale);
      out.push_back(f[p].imag() / scale);
    }
  };
  push(e.e16.s1, sc.s3);
  push(e.e16.s2, sc.s3);
  push(e.e17.s1, sc.s3);
  push(e.e17.s2, sc.s3);
  push(e.e18, sc.s4);
  push(e.e19, sc.s4);
  push(e.e20, sc.s3);
  push(e.e21, sc.s3);
}

cplx param_alpha(const Eigen::Vector4d& p) { return {p[0], p[1]}; }
cplx param_beta(const Eigen::Vector4d& p) { return {p[2], p[3]}; }

/// Minimum-norm least squares with an explicit null-space count.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, double rel_threshold, int& dim_null,
                               double* smallest = nullptr) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double thr = rel_threshold * std::sqrt(static_cast<double>(a.rows()));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
  dim_null = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > thr) {
      x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / sv[i]);
    } else {
      ++dim_null;
    }
  }
  if (smallest) *smallest = sv.size() ? sv[sv.size() - 1] / std::sqrt(static_cast<double>(a.rows())) : 0.0;
  return x;
}

constexpr double kRankThreshold = 1e-8;

}  // namespace

StationarityReport fit_stationarity(const InvariantData& inv, const FlowVelocity& v, double tol_stat,
                                    double umbilic_eps) {
  const System sys = assemble(inv, v, umbilic_eps);
  const Scales sc = scales_for(inv);

  std::vector<double> r0, ri;
  flatten(evaluate(sys, 0.0, 0.0), sc, r0);
  Eigen::MatrixXd a(r0.size(), 4);
  const Eigen::Map<const Eigen::VectorXd> base(r0.data(), r0.size());
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[i] = 1.0;
    flatten(evaluate(sys, param_alpha(e), param_beta(e)), sc, ri);
    a.col(i) = Eigen::Map<const Eigen::VectorXd>(ri.data(), ri.size()) - base;
  }

  StationarityReport rep;
  const Eigen::VectorXd p = min_norm_solve(a, -base, kRankThreshold, rep.dim_null);
  rep.alpha = cplx(p[0], p[1]);
  rep.beta = cplx(p[2], p[3]);

  const Evaluation e = evaluate(sys, rep.alpha, rep.beta);
  rep.mu = e.mu;
  rep.mu_mean = e.mu.mean();
  rep.mu_sup = e.mu.sup_norm();
  rep.residuals = {e.e16.sup_norm() / sc.s3, e.e17.sup_norm() / sc.s3, e.e18.sup_norm() / sc.s4,
                   e.e19.sup_norm() / sc.s4, e.e20.sup_norm() / sc.s3, e.e21.sup_norm() / sc.s3};
  rep.total = 0;
  for (double r : rep.residuals) rep.total = std::max(rep.total, r);
  rep.masked = static_cast<std::size_t>(std::count(sys.mask.begin(), sys.mask.end(), true));
  rep.verdict = rep.total < tol_stat;
  return rep;
}

S3Decomposition s3_decompose(const InvariantData& inv) {
  const double ks = kappa_sup(inv);
  if (!inv.s3 || !(inv.kappa.s2.sup_norm() <= 1e-8 * std::max(ks, 1.0))) {
    throw Error(ErrorCode::NotInS3, "s3_decompose: surface does not lie in a 3-sphere");
  }
  const NormalCalculus D = inv.calculus();
  const NormalSection& k = inv.kappa;
  const Scales sc = scales_for(inv);
  S3Decomposition out;

  const NormalSection y = D.Dz(D.Dz(k)) + (0.5 * inv.c) * k;
  const cplx num = dot(y, k.conj()).mean();
  const double den = kappa_norm2(inv).real().mean().real();
  out.mu = den > 0 ? -num / den : 0.0;
  out.r16 = (y + out.mu * k).sup_norm() / sc.s3;

  auto rank_of = [&](const std::vector<Field>& cols, double scale, int& dim_null, double& smallest) {
    // Real columns for Re/Im of alpha and beta: alpha f + conj(beta) g.
    const std::size_t n = cols[0].size();
    Eigen::MatrixXd a(2 * n * (cols.size() / 2), 4);
    for (std::size_t blk = 0; blk < cols.size() / 2; ++blk) {
      const Field& f = cols[2 * blk];
      const Field& g = cols[2 * blk + 1];
      for (std::size_t p = 0; p < n; ++p) {
        const std::size_t r = 2 * (blk * n + p);
        const cplx cf[4] = {f[p], cplx(0, 1) * f[p], g[p], cplx(0, -1) * g[p]};
        for (int j = 0; j < 4; ++j) {
          a(r, j) = cf[j].real() / scale;
          a(r + 1, j) = cf[j].imag() / scale;
        }
      }
    }
    min_norm_solve(a, Eigen::VectorXd::Zero(a.rows()), kRankThreshold, dim_null, &smallest);
  };
  const NormalSection Dzk = D.Dz(k), Dzbk = D.Dzb(k);
  rank_of({Dzk.s1, Dzbk.s1, Dzk.s2, Dzbk.s2}, sc.s3 / ks, out.null16, out.sigma16);
  rank_of({inv.dz(inv.c), inv.dzb(inv.c)}, sc.s3, out.null18, out.sigma18);

  out.r21 = (dot(D.Dzb(k.conj()), k) - dot(Dzbk, k.conj())).sup_norm() / sc.s3;
  return out;
}

IsothermicFit strong_isothermic_phase(const InvariantData& inv) {
  double m11 = 0, m12 = 0, m22 = 0;
  for (const Field* f : {&inv.kappa.s1, &inv.kappa.s2}) {
    for (std::size_t p = 0; p < f->size(); ++p) {
      const double re = (*f)[p].real(), im = (*f)[p].imag();
      m11 += re * re;
      m12 += re * im;
      m22 += im * im;
    }
  }
  const double trace = m11 + m22;
  if (!(trace > 0)) return {0.0, 0.0};
  // F(theta) = v^T M v with v = (sin 2 theta, cos 2 theta).
  Eigen::Matrix2d m;
  m << m11, m12, m12, m22;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Vector2d v = es.eigenvectors().col(0);
  double theta = 0.5 * std::atan2(v[0], v[1]);
  if (theta < 0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return {theta, std::max(0.0, es.eigenvalues()[0]) / trace};
}

WillmoreFit constrained_willmore_fit(const InvariantData& inv) {
  const NormalCalculus D = inv.calculus();
  const NormalSection& k = inv.kappa;
  const NormalSection lhs = D.Dzb(D.Dzb(k)) + (0.5 * inv.c.conj()) * k;
  const Scales sc = scales_for(inv);
  // Re(lambda kappa) = lambda_r Re kappa - lambda_i Im kappa, fitted to Re(lhs).
  const std::size_t n = k.s1.size();
  Eigen::MatrixXd a(2 * n, 2);
  Eigen::VectorXd rhs(2 * n);
  for (std::size_t p = 0; p < n; ++p) {
    a(p, 0) = k.s1[p].real() / sc.s3;
    a(p, 1) = -k.s1[p].imag() / sc.s3;
    a(n + p, 0) = k.s2[p].real() / sc.s3;
    a(n + p, 1) = -k.s2[p].imag() / sc.s3;
    rhs[p] = lhs.s1[p].real() / sc.s3;
    rhs[n + p] = lhs.s2[p].real() / sc.s3;
  }
  int dim_null = 0;
  const Eigen::VectorXd x = min_norm_solve(a, rhs, kRankThreshold, dim_null);
  WillmoreFit fit;
  fit.lambda = cplx(x[0], x[1]);
  const NormalSection model = {(fit.lambda * k.s1 + (fit.lambda * k.s1).conj()) * 0.5,
                               (fit.lambda * k.s2 + (fit.lambda * k.s2).conj()) * 0.5};
  fit.residual = (lhs - model).sup_norm() / sc.s3;
  return fit;
}

ClassificationReport classify(const InvariantData& inv, double tol_stat, double umbilic_eps) {
  ClassificationReport rep;
  rep.isothermic = strong_isothermic_phase(inv);
  rep.strongly_isothermic = rep.isothermic.residual < tol_stat;
  rep.willmore_fit = constrained_willmore_fit(inv);
  rep.constrained_willmore = rep.willmore_fit.residual < tol_stat;
  const double ks = kappa_sup(inv);
  rep.willmore = rep.constrained_willmore && std::abs(rep.willmore_fit.lambda) < tol_stat * std::max(ks * ks, 1e-300);
  rep.stationarity = fit_stationarity(inv, ds_velocity(inv), tol_stat, umbilic_eps);
  rep.ds_stationary = rep.stationarity.verdict;
  rep.cmc = rep.strongly_isothermic && rep.constrained_willmore;
  rep.theorem_applicable = inv.s3.has_value() && inv.kappa.s2.sup_norm() <= 1e-8 * std::max(ks, 1.0);
  rep.consistent = !rep.theorem_applicable || (rep.ds_stationary == rep.cmc);
  return rep;
}

}  // namespace dslab
