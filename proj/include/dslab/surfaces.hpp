#pragma once

// Built-in conformally parametrized tori, the S^3 -> S^4 embedding and the
// plain-text immersion file format.

#include <filesystem>
#include <optional>
#include <string>

#include "dslab/grid.hpp"

namespace dslab {

/// Homogeneous lift: null, future pointing samples in R^{n+1,1}.
struct LiftField {
  VecField psi;
  bool is_normalized = false;

  int sphere_dim() const { return psi.sphere_dim(); }
  const TorusGrid& grid() const { return psi.grid(); }
};

/// Constant unit spacelike vector normal to the 3-sphere containing a surface.
struct S3Context {
  MinkVec n_vec;
};

struct EmbeddedLift {
  LiftField lift;
  S3Context ctx;
};

enum class Ambient { R3, R4, S3, S4, Lightcone };

const char* ambient_name(Ambient a);
Ambient parse_ambient(const std::string& s);

/// Sup over the grid of |<psi,psi>| / |psi|^2 and the minimum of psi_0.
double lightcone_defect(const VecField& psi);

/// psi = (1, a cos(x/a), a sin(x/a), b cos(y/b), b sin(y/b)) on periods
/// (2 pi a, 2 pi b). Requires a, b > 0 and a^2 + b^2 = 1.
LiftField homogeneous_torus(double a, double b, int n1, int n2);

/// Appends a zero coordinate; n_vec is the final basis vector.
EmbeddedLift embed_s3(const LiftField& lift);

/// Surface of revolution in S^3 whose profile in the hyperbolic plane is the
/// circle of the homogeneous (a, b) torus with its radius modulated by
/// eps * cos(mode * t). The profile is reparametrized by arclength, so the
/// result is conformal and normalized up to round-off. Embedded in S^4.
/// mode must be 0 (no perturbation) or >= 2.
EmbeddedLift perturb_profile(double a, double b, double eps, int mode, int n1, int n2);

/// Product gamma1(x) x gamma2(y) in R^4 of two arclength curves whose turning
/// angles are x/a + eps sin(m x / a) and y/b + eps sin(l y / b), stereo-lifted
/// to R^{5,1}. Leaves every 3-sphere for eps != 0. m, l in {0} or >= 2.
LiftField product_torus(double a, double b, double eps, int m, int l, int n1, int n2);

/// Reads the immersion file format. Returns an un-normalized lift.
LiftField load_immersion(const std::filesystem::path& path);

/// Writes the immersion file format with 17 significant digits. For sphere
/// and Euclidean ambients the lift is projected accordingly; writing `s3`
/// from an S^4 lift requires the last coordinate to vanish.
void write_immersion(const std::filesystem::path& path, const LiftField& lift, Ambient ambient);

}  // namespace dslab
