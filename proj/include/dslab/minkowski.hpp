#pragma once

// Minkowski space R^{n+1,1} (n = 3 or 4), the lightcone model of S^n and
// the Lorentz action. Coordinate 0 is timelike.

#include <array>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "dslab/error.hpp"

namespace dslab {

inline constexpr double kTolLight = 1e-10;
inline constexpr double kTolOrth = 1e-12;
inline constexpr int kMaxMinkDim = 6;

/// A vector of R^{n+1,1}. `sphere_dim()` is n; the vector has n + 2 coordinates.
class MinkVec {
 public:
  MinkVec() = default;
  explicit MinkVec(int sphere_dim);
  MinkVec(int sphere_dim, std::span<const double> coords);

  static MinkVec basis(int sphere_dim, int index);

  int sphere_dim() const { return n_; }
  int size() const { return n_ + 2; }

  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(size())}; }

  MinkVec& operator+=(const MinkVec& o);
  MinkVec& operator-=(const MinkVec& o);
  MinkVec& operator*=(double s);
  friend MinkVec operator+(MinkVec a, const MinkVec& b) { return a += b; }
  friend MinkVec operator-(MinkVec a, const MinkVec& b) { return a -= b; }
  friend MinkVec operator*(double s, MinkVec a) { return a *= s; }

  double euclidean_norm2() const;

 private:
  int n_ = 4;
  std::array<double, kMaxMinkDim> c_{};
};

/// -v0 w0 + sum_i vi wi. Throws DimensionMismatch.
double mink_inner(const MinkVec& v, const MinkVec& w);

/// Null, future pointing within kTolLight relative to the Euclidean norm.
bool is_lightcone_point(const MinkVec& v, double tol = kTolLight);

/// x on the unit sphere of R^{n+1} -> (1, x).
MinkVec sphere_lift(std::span<const double> x, double tol = 1e-12);

/// x in R^n -> ((1+|x|^2)/2, x, (1-|x|^2)/2).
MinkVec stereo_lift(std::span<const double> x);

/// Element of the identity component of O(n+1,1).
class LorentzMap {
 public:
  using Matrix = Eigen::MatrixXd;

  static LorentzMap identity(int sphere_dim);
  /// Validates M^T G M = G, M00 > 0, det M = 1.
  static LorentzMap from_matrix(const Matrix& m, double tol = kTolOrth);

  int sphere_dim() const { return static_cast<int>(m_.rows()) - 2; }
  const Matrix& matrix() const { return m_; }

  /// || M^T G M - G ||_inf
  double orthogonality_defect() const;

 private:
  explicit LorentzMap(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

MinkVec apply_lorentz(const LorentzMap& m, const MinkVec& v);

/// Rotation by `angle` in the spatial (i, j) plane, i, j >= 1.
LorentzMap spatial_rotation(int sphere_dim, int i, int j, double angle);
/// Boost of the given rapidity in the (e0, e_axis) plane.
LorentzMap boost(int sphere_dim, int axis, double rapidity);
LorentzMap compose(const LorentzMap& a, const LorentzMap& b);

/// Deterministic in `seed`: random spatial rotation, one boost with
/// |rapidity| <= rapidity_bound, another random rotation.
LorentzMap random_lorentz(std::uint64_t seed, double rapidity_bound, int sphere_dim = 4);

/// Diagonal signature matrix G = diag(-1, 1, ..., 1).
Eigen::MatrixXd signature_matrix(int sphere_dim);

}  // namespace dslab
