#include "dslab/minkowski.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace dslab {

const char* error_tag(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::Unsolvable: return "unsolvable";
    case ErrorCode::NotConformal: return "not-conformal";
    case ErrorCode::NotFuturePointing: return "not-future-pointing";
    case ErrorCode::DegenerateFrame: return "degenerate-frame";
    case ErrorCode::NotInS3: return "not-in-s3";
    case ErrorCode::AllUmbilic: return "all-umbilic";
    case ErrorCode::StepRejected: return "step-rejected";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace {

void check_sphere_dim(int n) {
  if (n != 3 && n != 4) {
    throw Error(ErrorCode::InvalidArgument, "sphere dimension must be 3 or 4, got " + std::to_string(n));
  }
}

}  // namespace

MinkVec::MinkVec(int sphere_dim) : n_(sphere_dim) { check_sphere_dim(sphere_dim); }

MinkVec::MinkVec(int sphere_dim, std::span<const double> coords) : MinkVec(sphere_dim) {
  if (static_cast<int>(coords.size()) != size()) {
    throw Error(ErrorCode::DimensionMismatch, "MinkVec expects " + std::to_string(size()) + " coordinates");
  }
  for (int i = 0; i < size(); ++i) c_[i] = coords[i];
}

MinkVec MinkVec::basis(int sphere_dim, int index) {
  MinkVec v(sphere_dim);
  if (index < 0 || index >= v.size()) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  v.c_[index] = 1.0;
  return v;
}

MinkVec& MinkVec::operator+=(const MinkVec& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "MinkVec dimension mismatch");
  for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
  return *this;
}

MinkVec& MinkVec::operator-=(const MinkVec& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "MinkVec dimension mismatch");
  for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

MinkVec& MinkVec::operator*=(double s) {
  for (int i = 0; i < size(); ++i) c_[i] *= s;
  return *this;
}

double MinkVec::euclidean_norm2() const {
  double s = 0;
  for (int i = 0; i < size(); ++i) s += c_[i] * c_[i];
  return s;
}

double mink_inner(const MinkVec& v, const MinkVec& w) {
  if (v.sphere_dim() != w.sphere_dim()) throw Error(ErrorCode::DimensionMismatch, "mink_inner: dimension mismatch");
  double s = -v[0] * w[0];
  for (int i = 1; i < v.size(); ++i) s += v[i] * w[i];
  return s;
}

bool is_lightcone_point(const MinkVec& v, double tol) {
  return v[0] > 0 && std::abs(mink_inner(v, v)) <= tol * v.euclidean_norm2();
}

MinkVec sphere_lift(std::span<const double> x, double tol) {
  const int n = static_cast<int>(x.size()) - 1;
  check_sphere_dim(n);
  double r2 = 0;
  for (double xi : x) r2 += xi * xi;
  if (!(std::abs(r2 - 1.0) < tol)) throw Error(ErrorCode::InvalidArgument, "sphere_lift: input is not a unit vector");
  MinkVec v(n);
  v[0] = 1.0;
  for (int i = 0; i <= n; ++i) v[i + 1] = x[i];
  return v;
}

MinkVec stereo_lift(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  check_sphere_dim(n);
  double r2 = 0;
  for (double xi : x) r2 += xi * xi;
  MinkVec v(n);
  v[0] = 0.5 * (1.0 + r2);
  for (int i = 0; i < n; ++i) v[i + 1] = x[i];
  v[n + 1] = 0.5 * (1.0 - r2);
  return v;
}

Eigen::MatrixXd signature_matrix(int sphere_dim) {
  check_sphere_dim(sphere_dim);
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(sphere_dim + 2, sphere_dim + 2);
  g(0, 0) = -1.0;
  return g;
}

LorentzMap LorentzMap::identity(int sphere_dim) {
  check_sphere_dim(sphere_dim);
  return LorentzMap(Matrix::Identity(sphere_dim + 2, sphere_dim + 2));
}

LorentzMap LorentzMap::from_matrix(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || (m.rows() != 5 && m.rows() != 6)) {
    throw Error(ErrorCode::DimensionMismatch, "LorentzMap: matrix must be 5x5 or 6x6");
  }
  LorentzMap l(m);
  if (!(l.orthogonality_defect() < tol)) throw Error(ErrorCode::InvalidArgument, "LorentzMap: M^T G M != G");
  if (!(m(0, 0) > 0)) throw Error(ErrorCode::InvalidArgument, "LorentzMap: not time orientation preserving");
  if (!(m.determinant() > 0)) throw Error(ErrorCode::InvalidArgument, "LorentzMap: not orientation preserving");
  return l;
}

double LorentzMap::orthogonality_defect() const {
  const Eigen::MatrixXd g = signature_matrix(sphere_dim());
  return (m_.transpose() * g * m_ - g).cwiseAbs().maxCoeff();
}

MinkVec apply_lorentz(const LorentzMap& m, const MinkVec& v) {
  if (m.sphere_dim() != v.sphere_dim()) throw Error(ErrorCode::DimensionMismatch, "apply_lorentz: dimension mismatch");
  MinkVec out(v.sphere_dim());
  const auto& a = m.matrix();
  for (int i = 0; i < v.size(); ++i) {
    double s = 0;
    for (int j = 0; j < v.size(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

LorentzMap spatial_rotation(int sphere_dim, int i, int j, double angle) {
  LorentzMap id = LorentzMap::identity(sphere_dim);
  Eigen::MatrixXd m = id.matrix();
  if (i < 1 || j < 1 || i == j || i >= m.rows() || j >= m.rows()) {
    throw Error(ErrorCode::InvalidArgument, "spatial_rotation: bad plane");
  }
  const double c = std::cos(angle), s = std::sin(angle);
  m(i, i) = c;
  m(j, j) = c;
  m(j, i) = s;
  m(i, j) = -s;
  return LorentzMap::from_matrix(m);
}

LorentzMap boost(int sphere_dim, int axis, double rapidity) {
  Eigen::MatrixXd m = LorentzMap::identity(sphere_dim).matrix();
  if (axis < 1 || axis >= m.rows()) throw Error(ErrorCode::InvalidArgument, "boost: bad axis");
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  m(0, 0) = ch;
  m(axis, axis) = ch;
  m(0, axis) = sh;
  m(axis, 0) = sh;
  // Large rapidities lose absolute orthogonality in double precision.
  return LorentzMap::from_matrix(m, kTolOrth * ch * ch);
}

LorentzMap compose(const LorentzMap& a, const LorentzMap& b) {
  if (a.sphere_dim() != b.sphere_dim()) throw Error(ErrorCode::DimensionMismatch, "compose: dimension mismatch");
  const Eigen::MatrixXd m = a.matrix() * b.matrix();
  const double scale = m.cwiseAbs().maxCoeff();
  return LorentzMap::from_matrix(m, kTolOrth * std::max(1.0, scale * scale));
}

namespace {

LorentzMap random_rotation(int sphere_dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  LorentzMap r = LorentzMap::identity(sphere_dim);
  const int d = sphere_dim + 2;
  for (int i = 1; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) r = compose(spatial_rotation(sphere_dim, i, j, angle(rng)), r);
  }
  return r;
}

}  // namespace

LorentzMap random_lorentz(std::uint64_t seed, double rapidity_bound, int sphere_dim) {
  if (!(rapidity_bound >= 0)) throw Error(ErrorCode::InvalidArgument, "random_lorentz: rapidity_bound must be >= 0");
  std::mt19937_64 rng(seed);
  const LorentzMap r1 = random_rotation(sphere_dim, rng);
  std::uniform_real_distribution<double> rap(-rapidity_bound, rapidity_bound);
  const double s = rapidity_bound > 0 ? rap(rng) : 0.0;
  const LorentzMap r2 = random_rotation(sphere_dim, rng);
  if (s == 0.0) return compose(r2, r1);
  return compose(r2, compose(boost(sphere_dim, 1, s), r1));
}

}  // namespace dslab
