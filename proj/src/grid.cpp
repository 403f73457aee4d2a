#include "dslab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "dslab/simd.hpp"

namespace dslab {

TorusGrid TorusGrid::make(double p1, double p2, int n1, int n2) {
  if (!(p1 > 0) || !(p2 > 0) || !std::isfinite(p1) || !std::isfinite(p2)) {
    throw Error(ErrorCode::InvalidArgument, "grid periods must be positive");
  }
  if (n1 < 2 || n2 < 2 || n1 % 2 != 0 || n2 % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid resolution must be even, got " + std::to_string(n1) + "x" + std::to_string(n2));
  }
  return TorusGrid{p1, p2, n1, n2};
}

// ---------------------------------------------------------------- Field

Field::Field(const TorusGrid& g, std::vector<cplx> values) : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "Field: value count does not match grid");
}

Field Field::from_function(const TorusGrid& g, const std::function<cplx(double, double)>& f) {
  Field out(g);
  for (int j = 0; j < g.n1; ++j)
    for (int k = 0; k < g.n2; ++k) out.at(j, k) = f(g.x(j), g.y(k));
  return out;
}

void Field::check_grid(const Field& o) const {
  if (!(grid_ == o.grid_)) throw Error(ErrorCode::DimensionMismatch, "Field: grid mismatch");
}

Field& Field::operator+=(const Field& o) {
  check_grid(o);
  simd::active_kernels().axpy(v_.data(), 1.0, o.v_.data(), v_.size());
  return *this;
}

Field& Field::operator-=(const Field& o) {
  check_grid(o);
  simd::active_kernels().axpy(v_.data(), -1.0, o.v_.data(), v_.size());
  return *this;
}

Field& Field::operator*=(const Field& o) {
  check_grid(o);
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] *= o.v_[p];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& v : v_) v *= s;
  return *this;
}

Field& Field::operator/=(const Field& o) {
  check_grid(o);
  for (std::size_t p = 0; p < v_.size(); ++p) v_[p] /= o.v_[p];
  return *this;
}

Field& Field::operator+=(cplx s) {
  for (auto& v : v_) v += s;
  return *this;
}

Field& Field::add_product(const Field& a, const Field& x) {
  check_grid(a);
  check_grid(x);
  simd::active_kernels().mul_add(v_.data(), a.v_.data(), x.v_.data(), v_.size());
  return *this;
}

Field Field::conj() const {
  Field out(*this);
  for (auto& v : out.v_) v = std::conj(v);
  return out;
}

Field Field::real() const {
  Field out(*this);
  for (auto& v : out.v_) v = v.real();
  return out;
}

Field Field::imag() const {
  Field out(*this);
  for (auto& v : out.v_) v = v.imag();
  return out;
}

double Field::sup_norm() const {
  double m = 0;
  for (const auto& v : v_) m = std::max(m, std::abs(v));
  return m;
}

cplx Field::mean() const {
  cplx s = 0;
  for (const auto& v : v_) s += v;
  return s / static_cast<double>(v_.size());
}

bool Field::all_finite() const {
  for (const auto& v : v_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double max_abs_diff(const Field& a, const Field& b) { return (a - b).sup_norm(); }

// ---------------------------------------------------------------- VecField

VecField::VecField(const TorusGrid& g, int sphere_dim) : n_(sphere_dim), comps_(sphere_dim + 2, Field(g)) {
  if (sphere_dim != 3 && sphere_dim != 4) throw Error(ErrorCode::InvalidArgument, "VecField: sphere dimension must be 3 or 4");
}

MinkVec VecField::real_point(std::size_t p) const {
  MinkVec v(n_);
  for (int c = 0; c < dim(); ++c) v[c] = comps_[c][p].real();
  return v;
}

void VecField::set_point(std::size_t p, const MinkVec& v) {
  if (v.sphere_dim() != n_) throw Error(ErrorCode::DimensionMismatch, "VecField: point dimension mismatch");
  for (int c = 0; c < dim(); ++c) comps_[c][p] = v[c];
}

VecField& VecField::operator+=(const VecField& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "VecField dimension mismatch");
  for (int c = 0; c < dim(); ++c) comps_[c] += o.comps_[c];
  return *this;
}

VecField& VecField::operator-=(const VecField& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "VecField dimension mismatch");
  for (int c = 0; c < dim(); ++c) comps_[c] -= o.comps_[c];
  return *this;
}

VecField& VecField::operator*=(cplx s) {
  for (auto& f : comps_) f *= s;
  return *this;
}

VecField& VecField::operator*=(const Field& s) {
  for (auto& f : comps_) f *= s;
  return *this;
}

VecField& VecField::add_scaled(const Field& s, const VecField& v) {
  if (v.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "VecField dimension mismatch");
  for (int c = 0; c < dim(); ++c) comps_[c].add_product(s, v.comps_[c]);
  return *this;
}

VecField VecField::conj() const {
  VecField out(*this);
  for (auto& f : out.comps_) f = f.conj();
  return out;
}

double VecField::sup_norm() const {
  double m = 0;
  for (const auto& f : comps_) m = std::max(m, f.sup_norm());
  return m;
}

Field mink_dot(const VecField& a, const VecField& b) {
  if (a.sphere_dim() != b.sphere_dim()) throw Error(ErrorCode::DimensionMismatch, "mink_dot: dimension mismatch");
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::DimensionMismatch, "mink_dot: grid mismatch");
  Field out(a.grid());
  const cplx* pa[kMaxMinkDim];
  const cplx* pb[kMaxMinkDim];
  for (int c = 0; c < a.dim(); ++c) {
    pa[c] = a[c].data();
    pb[c] = b[c].data();
  }
  simd::active_kernels().mink_dot(out.data(), pa, pb, a.dim(), out.size());
  return out;
}

double max_abs_diff(const VecField& a, const VecField& b) {
  double m = 0;
  for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
  return m;
}

// ---------------------------------------------------------------- spectral

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not thread safe; plans are created once per shape and
// then only executed through the new-array interface.
const Plans& plans_for(int n1, int n2) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n1, n2});
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch(static_cast<std::size_t>(n1) * n2);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  Plans p;
  p.forward = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(std::make_pair(n1, n2), p).first->second;
}

void forward(std::vector<cplx>& v, const TorusGrid& g) {
  auto* buf = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(plans_for(g.n1, g.n2).forward, buf, buf);
}

void backward(std::vector<cplx>& v, const TorusGrid& g) {
  auto* buf = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(plans_for(g.n1, g.n2).backward, buf, buf);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (auto& x : v) x *= inv;
}

int signed_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

/// Angular wavenumbers with the Nyquist mode zeroed (odd derivatives).
std::vector<double> wavenumbers(int n, double period) {
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) {
    k[j] = (j == n / 2) ? 0.0 : 2.0 * std::numbers::pi * signed_mode(j, n) / period;
  }
  return k;
}

/// Multiplier a(kx) + b * ky applied row by row, where a = ax * i kx.
Field apply_multiplier(const Field& f, cplx ax, cplx b) {
  const TorusGrid& g = f.grid();
  std::vector<cplx> v = f.values();
  forward(v, g);
  const auto kx = wavenumbers(g.n1, g.p1);
  const auto ky = wavenumbers(g.n2, g.p2);
  const auto& kern = simd::active_kernels();
  for (int j = 0; j < g.n1; ++j) {
    kern.scale_affine(v.data() + g.index(j, 0), ky.data(), g.n2, ax * cplx(0.0, kx[j]), b);
  }
  backward(v, g);
  return Field(g, std::move(v));
}

}  // namespace

Field d_z(const Field& f, cplx phase) { return apply_multiplier(f, 0.5 * phase, 0.5 * phase); }

Field d_zbar(const Field& f, cplx phase) {
  const cplx pb = std::conj(phase);
  return apply_multiplier(f, 0.5 * pb, -0.5 * pb);
}

Field d_x(const Field& f) { return apply_multiplier(f, 1.0, 0.0); }
Field d_y(const Field& f) { return apply_multiplier(f, 0.0, cplx(0.0, 1.0)); }

namespace {

template <class Op>
VecField map_components(const VecField& f, Op op) {
  VecField out(f.grid(), f.sphere_dim());
  for (int c = 0; c < f.dim(); ++c) out[c] = op(f[c]);
  return out;
}

}  // namespace

VecField d_z(const VecField& f, cplx phase) {
  return map_components(f, [&](const Field& c) { return d_z(c, phase); });
}
VecField d_zbar(const VecField& f, cplx phase) {
  return map_components(f, [&](const Field& c) { return d_zbar(c, phase); });
}
VecField d_x(const VecField& f) {
  return map_components(f, [](const Field& c) { return d_x(c); });
}
VecField d_y(const VecField& f) {
  return map_components(f, [](const Field& c) { return d_y(c); });
}

cplx integrate(const Field& f) { return f.mean() * f.grid().area(); }

Field solve_dbar(const Field& rhs, cplx phase, double tol) {
  const TorusGrid& g = rhs.grid();
  const double ratio = std::abs(rhs.mean()) / (rhs.sup_norm() + 1e-300);
  if (!(ratio < tol)) {
    throw Error(ErrorCode::Unsolvable,
                "solve_dbar: right-hand side has nonzero mean (ratio " + std::to_string(ratio) +
                    "); the normal bundle degree is not zero");
  }
  std::vector<cplx> v = rhs.values();
  forward(v, g);
  const auto kx = wavenumbers(g.n1, g.p1);
  const auto ky = wavenumbers(g.n2, g.p2);
  for (int j = 0; j < g.n1; ++j) {
    for (int k = 0; k < g.n2; ++k) {
      const cplx m = 0.5 * phase * cplx(ky[k], kx[j]);
      cplx& c = v[g.index(j, k)];
      c = (m == 0.0) ? 0.0 : c / m;
    }
  }
  backward(v, g);
  return Field(g, std::move(v));
}

double spectral_tail(const Field& f) {
  const TorusGrid& g = f.grid();
  std::vector<cplx> v = f.values();
  forward(v, g);
  double total = 0, tail = 0;
  for (int j = 0; j < g.n1; ++j) {
    const bool hj = 3 * std::abs(signed_mode(j, g.n1)) > g.n1;
    for (int k = 0; k < g.n2; ++k) {
      const double e = std::norm(v[g.index(j, k)]);
      total += e;
      if (hj || 3 * std::abs(signed_mode(k, g.n2)) > g.n2) tail += e;
    }
  }
  return total > 0 ? tail / total : 0.0;
}

double spectral_tail(const VecField& f) {
  double m = 0;
  for (int c = 0; c < f.dim(); ++c) m = std::max(m, spectral_tail(f[c]));
  return m;
}

Field spectral_filter(const Field& f) {
  const TorusGrid& g = f.grid();
  std::vector<cplx> v = f.values();
  forward(v, g);
  for (int j = 0; j < g.n1; ++j) {
    const bool hj = 3 * std::abs(signed_mode(j, g.n1)) > g.n1;
    for (int k = 0; k < g.n2; ++k) {
      if (hj || 3 * std::abs(signed_mode(k, g.n2)) > g.n2) v[g.index(j, k)] = 0.0;
    }
  }
  backward(v, g);
  return Field(g, std::move(v));
}

VecField spectral_filter(const VecField& f) {
  VecField out(f);
  for (int c = 0; c < out.dim(); ++c) out[c] = spectral_filter(f[c]);
  return out;
}

}  // namespace dslab
