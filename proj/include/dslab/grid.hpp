#pragma once

// Rectangular periodic torus grids, sampled fields and the pseudo-spectral
// calculus on them: d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "dslab/minkowski.hpp"

namespace dslab {

using cplx = std::complex<double>;

inline constexpr double kTolSolv = 1e-8;

struct TorusGrid {
  double p1 = 0, p2 = 0;
  int n1 = 0, n2 = 0;

  /// Throws InvalidArgument unless periods > 0 and resolutions even and >= 2.
  static TorusGrid make(double p1, double p2, int n1, int n2);

  std::size_t size() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }
  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * n2 + k; }
  double x(int j) const { return j * p1 / n1; }
  double y(int k) const { return k * p2 / n2; }
  double area() const { return p1 * p2; }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

/// Complex samples on a TorusGrid, row-major in (j, k).
class Field {
 public:
  Field() = default;
  explicit Field(const TorusGrid& g, cplx value = 0.0) : grid_(g), v_(g.size(), value) {}
  Field(const TorusGrid& g, std::vector<cplx> values);

  static Field from_function(const TorusGrid& g, const std::function<cplx(double, double)>& f);

  const TorusGrid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  cplx& operator[](std::size_t p) { return v_[p]; }
  cplx operator[](std::size_t p) const { return v_[p]; }
  cplx& at(int j, int k) { return v_[grid_.index(j, k)]; }
  cplx at(int j, int k) const { return v_[grid_.index(j, k)]; }
  const std::vector<cplx>& values() const { return v_; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(const Field& o);
  Field& operator*=(cplx s);
  Field& operator/=(const Field& o);
  Field& operator+=(cplx s);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, const Field& b) { return a *= b; }
  friend Field operator/(Field a, const Field& b) { return a /= b; }
  friend Field operator*(cplx s, Field a) { return a *= s; }
  friend Field operator*(Field a, cplx s) { return a *= s; }
  friend Field operator+(Field a, cplx s) { return a += s; }
  friend Field operator-(Field a) { return a *= -1.0; }

  /// y += a * x without temporaries.
  Field& add_product(const Field& a, const Field& x);

  Field conj() const;
  Field real() const;
  Field imag() const;
  double sup_norm() const;
  cplx mean() const;
  bool all_finite() const;

 private:
  void check_grid(const Field& o) const;

  TorusGrid grid_;
  std::vector<cplx> v_;
};

double max_abs_diff(const Field& a, const Field& b);

/// Minkowski-vector valued field: one complex Field per coordinate.
class VecField {
 public:
  VecField() = default;
  VecField(const TorusGrid& g, int sphere_dim);

  int sphere_dim() const { return n_; }
  int dim() const { return n_ + 2; }
  const TorusGrid& grid() const { return comps_.front().grid(); }

  Field& operator[](int c) { return comps_[c]; }
  const Field& operator[](int c) const { return comps_[c]; }

  MinkVec real_point(std::size_t p) const;
  void set_point(std::size_t p, const MinkVec& v);

  VecField& operator+=(const VecField& o);
  VecField& operator-=(const VecField& o);
  VecField& operator*=(cplx s);
  /// Pointwise scaling by a scalar field.
  VecField& operator*=(const Field& s);
  friend VecField operator+(VecField a, const VecField& b) { return a += b; }
  friend VecField operator-(VecField a, const VecField& b) { return a -= b; }
  friend VecField operator*(cplx s, VecField a) { return a *= s; }
  friend VecField operator*(const Field& s, VecField a) { return a *= s; }

  /// this += s * v, pointwise.
  VecField& add_scaled(const Field& s, const VecField& v);

  VecField conj() const;
  double sup_norm() const;

 private:
  int n_ = 4;
  std::vector<Field> comps_;
};

/// Complex-bilinear Minkowski product, pointwise.
Field mink_dot(const VecField& a, const VecField& b);

double max_abs_diff(const VecField& a, const VecField& b);

/// Spectral calculus. `phase` = e^{i theta} rotates the chart: with
/// z~ = e^{-i theta} z one has d/dz~ = e^{i theta} d/dz.
Field d_z(const Field& f, cplx phase = 1.0);
Field d_zbar(const Field& f, cplx phase = 1.0);
Field d_x(const Field& f);
Field d_y(const Field& f);
VecField d_z(const VecField& f, cplx phase = 1.0);
VecField d_zbar(const VecField& f, cplx phase = 1.0);
VecField d_x(const VecField& f);
VecField d_y(const VecField& f);

/// mean(values) * P1 * P2
cplx integrate(const Field& f);

/// Zero-mean u with d_z u = rhs (in the chart given by `phase`). Throws
/// Unsolvable if |mean(rhs)| / (||rhs||_inf + 1e-300) >= tol.
Field solve_dbar(const Field& rhs, cplx phase = 1.0, double tol = kTolSolv);

/// Fraction of spectral energy in modes with |m| > N1/3 or |l| > N2/3.
double spectral_tail(const Field& f);
double spectral_tail(const VecField& f);

/// Zeroes the modes counted by spectral_tail (two-thirds rule).
Field spectral_filter(const Field& f);
VecField spectral_filter(const VecField& f);

}  // namespace dslab
