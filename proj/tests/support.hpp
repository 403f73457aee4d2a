#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "dslab/quartic.hpp"

namespace testing {

using dslab::cplx;

inline const double kClifford = 1 / std::sqrt(2.0);

/// Pointwise Lorentz image of a lift. S^3 lifts are embedded first when the
/// map acts on R^{5,1}.
inline dslab::LiftField apply(const dslab::LorentzMap& m, const dslab::LiftField& lift) {
  const bool embed = lift.sphere_dim() == 3 && m.sphere_dim() == 4;
  dslab::LiftField src = embed ? dslab::embed_s3(lift).lift : lift;
  dslab::LiftField out = src;
  for (std::size_t p = 0; p < src.grid().size(); ++p) out.psi.set_point(p, dslab::apply_lorentz(m, src.psi.real_point(p)));
  out.is_normalized = false;
  return out;
}

/// Exact frame data of the homogeneous (a, b) torus at one point, computed
/// from closed-form derivatives: the dual lift from its defining conditions
/// inside span{psi, Laplacian psi}, kappa as the Gram projection of psi_zz
/// onto the complement of span{psi, psi_hat, psi_x, psi_y}.
struct PointOracle {
  cplx c;
  double kappa2;
  cplx hopf;  // <psi_zz, psi_zz> restricted to the normal bundle
};

inline PointOracle homogeneous_oracle(double a, double b, double x, double y) {
  using V = Eigen::Matrix<double, 5, 1>;
  using CV = Eigen::Matrix<cplx, 5, 1>;
  const Eigen::Matrix<double, 5, 1> g(-1, 1, 1, 1, 1);
  auto ip = [&](const auto& u, const auto& v) {
    using T = std::common_type_t<typename std::decay_t<decltype(u)>::Scalar, typename std::decay_t<decltype(v)>::Scalar>;
    T s = 0;
    for (int i = 0; i < 5; ++i) s += g[i] * T(u[i]) * T(v[i]);
    return s;
  };
  const double cx = std::cos(x / a), sx = std::sin(x / a), cy = std::cos(y / b), sy = std::sin(y / b);
  V psi, px, py, pxx, pyy;
  psi << 1, a * cx, a * sx, b * cy, b * sy;
  px << 0, -sx, cx, 0, 0;
  py << 0, 0, 0, -sy, cy;
  pxx << 0, -cx / a, -sx / a, 0, 0;
  pyy << 0, 0, 0, -cy / b, -sy / b;
  const V lap = pxx + pyy;
  const double v = -1 / ip(lap, psi);
  const double u = -v * ip(lap, lap) / (2 * ip(psi, lap));
  const V hat = u * psi + v * lap;
  const CV pzz = 0.25 * (pxx - pyy).cast<cplx>();  // psi_xy = 0

  const cplx c = 2.0 * ip(pzz, hat);
  const V basis[4] = {psi, hat, px, py};
  Eigen::Matrix4d gram;
  Eigen::Matrix<cplx, 4, 1> rhs;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) gram(i, j) = ip(basis[i], basis[j]);
    rhs[i] = ip(basis[i], pzz);
  }
  const Eigen::Matrix<cplx, 4, 1> coef = gram.cast<cplx>().lu().solve(rhs);
  CV kappa = pzz;
  for (int i = 0; i < 4; ++i) kappa -= coef[i] * basis[i].cast<cplx>();
  const CV kbar = kappa.conjugate();
  return {c, std::real(ip(kappa, kbar)), ip(kappa, kappa)};
}

}  // namespace testing

namespace testing {

template <class F>
std::optional<dslab::ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const dslab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
