#include "dslab/surfaces.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <vector>

namespace dslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_homogeneous_params(double a, double b) {
  if (!(a > 0) || !(b > 0) || !(std::abs(a * a + b * b - 1.0) < 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "homogeneous torus requires a, b > 0 and a^2 + b^2 = 1");
  }
}

void check_mode(int m) {
  if (m < 0 || m == 1) {
    throw Error(ErrorCode::InvalidArgument, "perturbation mode must be 0 or >= 2 (mode 1 does not close up)");
  }
}

}  // namespace

const char* ambient_name(Ambient a) {
  switch (a) {
    case Ambient::R3: return "r3";
    case Ambient::R4: return "r4";
    case Ambient::S3: return "s3";
    case Ambient::S4: return "s4";
    case Ambient::Lightcone: return "lightcone";
  }
  return "?";
}

Ambient parse_ambient(const std::string& s) {
  if (s == "r3") return Ambient::R3;
  if (s == "r4") return Ambient::R4;
  if (s == "s3") return Ambient::S3;
  if (s == "s4") return Ambient::S4;
  if (s == "lightcone") return Ambient::Lightcone;
  throw Error(ErrorCode::Parse, "unknown ambient '" + s + "'");
}

double lightcone_defect(const VecField& psi) {
  double worst = 0;
  for (std::size_t p = 0; p < psi.grid().size(); ++p) {
    const MinkVec v = psi.real_point(p);
    worst = std::max(worst, std::abs(mink_inner(v, v)) / v.euclidean_norm2());
  }
  return worst;
}

LiftField homogeneous_torus(double a, double b, int n1, int n2) {
  check_homogeneous_params(a, b);
  const TorusGrid g = TorusGrid::make(kTwoPi * a, kTwoPi * b, n1, n2);
  VecField psi(g, 3);
  for (int j = 0; j < n1; ++j) {
    for (int k = 0; k < n2; ++k) {
      const std::size_t p = g.index(j, k);
      const double u = g.x(j) / a, v = g.y(k) / b;
      psi[0][p] = 1.0;
      psi[1][p] = a * std::cos(u);
      psi[2][p] = a * std::sin(u);
      psi[3][p] = b * std::cos(v);
      psi[4][p] = b * std::sin(v);
    }
  }
  return {std::move(psi), true};
}

EmbeddedLift embed_s3(const LiftField& lift) {
  if (lift.sphere_dim() != 3) throw Error(ErrorCode::DimensionMismatch, "embed_s3 expects a lift in R^{4,1}");
  VecField psi(lift.grid(), 4);
  for (int c = 0; c < 5; ++c) psi[c] = lift.psi[c];
  return {{std::move(psi), lift.is_normalized}, {MinkVec::basis(4, 5)}};
}

namespace {

/// Arclength reparametrization of a closed curve t in [0, 2 pi) with known
/// speed: Fourier integration of the speed plus Newton inversion.
class ArclengthMap {
 public:
  template <class Speed>
  explicit ArclengthMap(Speed speed, int samples = 512) {
    std::vector<double> v(samples);
    for (int p = 0; p < samples; ++p) v[p] = speed(kTwoPi * p / samples);
    for (int k = 0; k < samples / 2; ++k) {
      cplx c = 0;
      for (int p = 0; p < samples; ++p) c += v[p] * std::polar(1.0, -kTwoPi * k * p / samples);
      c /= static_cast<double>(samples);
      if (k > 0 && std::abs(c) < 1e-18 * std::abs(coef_[0])) break;
      coef_.push_back(c);
    }
  }

  double length() const { return kTwoPi * coef_[0].real(); }

  double arclength(double t) const {
    double s = coef_[0].real() * t;
    for (std::size_t k = 1; k < coef_.size(); ++k) {
      const double kk = static_cast<double>(k);
      s += 2.0 * (coef_[k] / cplx(0.0, kk) * (std::polar(1.0, kk * t) - 1.0)).real();
    }
    return s;
  }

  double speed(double t) const {
    double v = coef_[0].real();
    for (std::size_t k = 1; k < coef_.size(); ++k) v += 2.0 * (coef_[k] * std::polar(1.0, static_cast<double>(k) * t)).real();
    return v;
  }

  /// Parameter t with arclength(t) = s.
  double invert(double s) const {
    double t = kTwoPi * s / length();
    for (int it = 0; it < 60; ++it) {
      const double dt = (arclength(t) - s) / speed(t);
      t -= dt;
      if (std::abs(dt) < 1e-16 * (1.0 + std::abs(t))) break;
    }
    return t;
  }

 private:
  std::vector<cplx> coef_;
};

}  // namespace

EmbeddedLift perturb_profile(double a, double b, double eps, int mode, int n1, int n2) {
  check_homogeneous_params(a, b);
  check_mode(mode);
  if (!std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "perturbation amplitude must be finite");
  // Profile in the hyperboloid {<A,A> = -b^2} of R^{2,1}; the homogeneous
  // torus is the circle of hyperbolic radius asinh(a/b).
  const double r0 = std::asinh(a / b);
  if (!(std::abs(eps) < 0.5 * r0)) throw Error(ErrorCode::InvalidArgument, "perturbation amplitude too large");
  const double m = mode;
  auto radius = [&](double t) { return r0 + eps * std::cos(m * t); };
  auto speed = [&](double t) {
    const double dr = -eps * m * std::sin(m * t);
    const double sh = std::sinh(radius(t));
    return b * std::sqrt(dr * dr + sh * sh);
  };
  const ArclengthMap arc(speed);
  const TorusGrid g = TorusGrid::make(arc.length(), kTwoPi * b, n1, n2);
  VecField psi(g, 4);
  for (int j = 0; j < n1; ++j) {
    const double t = (eps == 0.0) ? g.x(j) / a : arc.invert(g.x(j));
    const double r = radius(t);
    const double a0 = (eps == 0.0) ? 1.0 : b * std::cosh(r);
    const double rs = (eps == 0.0) ? a : b * std::sinh(r);
    for (int k = 0; k < n2; ++k) {
      const std::size_t p = g.index(j, k);
      const double v = g.y(k) / b;
      psi[0][p] = a0;
      psi[1][p] = rs * std::cos(t);
      psi[2][p] = rs * std::sin(t);
      psi[3][p] = b * std::cos(v);
      psi[4][p] = b * std::sin(v);
    }
  }
  return {{std::move(psi), eps == 0.0}, {MinkVec::basis(4, 5)}};
}

namespace {

/// Closed arclength curve with turning angle s/r + eps sin(m s / r), via the
/// Jacobi-Anger expansion. Returns samples at s = 0, L/n, ...
std::vector<cplx> modulated_circle(double r, double eps, int m, int n) {
  std::vector<cplx> out(n, 0.0);
  int nmax = (m == 0 || eps == 0.0) ? 0 : 40;
  for (int i = 0; i < n; ++i) {
    const double s = kTwoPi * r * i / n;
    cplx z = 0;
    for (int q = -nmax; q <= nmax; ++q) {
      const double jq = std::cyl_bessel_j(std::abs(q), std::abs(eps));
      // J_{-q}(x) = (-1)^q J_q(x), J_q(-x) = (-1)^q J_q(x)
      double coef = jq;
      if ((q < 0) != (eps < 0) && (std::abs(q) % 2 == 1)) coef = -coef;
      const double w = 1.0 + q * m;
      z += coef * r / w * std::polar(1.0, w * s / r);
    }
    out[i] = z;
  }
  return out;
}

}  // namespace

LiftField product_torus(double a, double b, double eps, int m, int l, int n1, int n2) {
  check_homogeneous_params(a, b);
  check_mode(m);
  check_mode(l);
  const TorusGrid g = TorusGrid::make(kTwoPi * a, kTwoPi * b, n1, n2);
  const auto g1 = modulated_circle(a, eps, m, n1);
  const auto g2 = modulated_circle(b, eps, l, n2);
  VecField psi(g, 4);
  for (int j = 0; j < n1; ++j) {
    for (int k = 0; k < n2; ++k) {
      const double x[4] = {g1[j].real(), g1[j].imag(), g2[k].real(), g2[k].imag()};
      psi.set_point(g.index(j, k), stereo_lift(x));
    }
  }
  return {std::move(psi), false};
}

// ---------------------------------------------------------------- file I/O

namespace {

int coords_for(Ambient a, int n) {
  switch (a) {
    case Ambient::R3:
    case Ambient::R4: return n;
    case Ambient::S3:
    case Ambient::S4: return n + 1;
    case Ambient::Lightcone: return n + 2;
  }
  return 0;
}

int required_dim(Ambient a) {
  switch (a) {
    case Ambient::R3:
    case Ambient::S3: return 3;
    case Ambient::R4:
    case Ambient::S4: return 4;
    case Ambient::Lightcone: return 0;
  }
  return 0;
}

[[noreturn]] void parse_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::Parse, path.string() + ": " + what);
}

}  // namespace

LiftField load_immersion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) parse_error(path, std::string("missing ") + what);
    return std::istringstream(line);
  };

  std::string kw, amb, kw2;
  {
    auto s = next("magic line");
    if (!(s >> kw >> kw2) || kw != "torus-immersion" || kw2 != "v1") parse_error(path, "bad magic line");
  }
  int n = 0;
  {
    auto s = next("ambient line");
    if (!(s >> kw >> amb >> kw2 >> n) || kw != "ambient" || kw2 != "dim") parse_error(path, "malformed ambient line");
  }
  const Ambient ambient = parse_ambient(amb);
  if (n != 3 && n != 4) parse_error(path, "dim must be 3 or 4");
  if (required_dim(ambient) != 0 && required_dim(ambient) != n) parse_error(path, "dim does not match ambient");
  double p1 = 0, p2 = 0;
  {
    auto s = next("periods line");
    if (!(s >> kw >> p1 >> p2) || kw != "periods") parse_error(path, "malformed periods line");
  }
  int n1 = 0, n2 = 0;
  {
    auto s = next("grid line");
    if (!(s >> kw >> n1 >> n2) || kw != "grid") parse_error(path, "malformed grid line");
  }
  TorusGrid g;
  try {
    g = TorusGrid::make(p1, p2, n1, n2);
  } catch (const Error& e) {
    parse_error(path, e.what());
  }

  const int nc = coords_for(ambient, n);
  VecField psi(g, n);
  std::vector<double> c(nc);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (row >= g.size()) parse_error(path, "too many data rows");
    std::istringstream s(line);
    long j = -1, k = -1;
    std::string tok;
    if (!(s >> j >> k)) parse_error(path, "row " + std::to_string(row) + ": missing indices");
    for (int i = 0; i < nc; ++i) {
      if (!(s >> tok)) parse_error(path, "row " + std::to_string(row) + ": expected " + std::to_string(nc) + " coordinates");
      try {
        std::size_t used = 0;
        c[i] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_error(path, "row " + std::to_string(row) + ": bad number '" + tok + "'");
      }
      if (!std::isfinite(c[i])) parse_error(path, "row " + std::to_string(row) + ": non-finite value");
    }
    if (s >> tok) parse_error(path, "row " + std::to_string(row) + ": trailing data");
    if (static_cast<std::size_t>(j) != row / n2 || static_cast<std::size_t>(k) != row % n2) {
      parse_error(path, "row " + std::to_string(row) + ": indices out of row-major order");
    }
    MinkVec v;
    try {
      switch (ambient) {
        case Ambient::R3:
        case Ambient::R4: v = stereo_lift(c); break;
        case Ambient::S3:
        case Ambient::S4: v = sphere_lift(c, 1e-10); break;
        case Ambient::Lightcone:
          v = MinkVec(n, c);
          if (!is_lightcone_point(v)) throw Error(ErrorCode::InvalidArgument, "not a future-pointing null vector");
          break;
      }
    } catch (const Error& e) {
      parse_error(path, "row " + std::to_string(row) + ": " + e.what());
    }
    psi.set_point(row, v);
    ++row;
  }
  if (row != g.size()) {
    parse_error(path, "expected " + std::to_string(g.size()) + " data rows, found " + std::to_string(row));
  }
  return {std::move(psi), false};
}

void write_immersion(const std::filesystem::path& path, const LiftField& lift, Ambient ambient) {
  const TorusGrid& g = lift.grid();
  int n = lift.sphere_dim();
  const bool drop_last = (ambient == Ambient::S3 || ambient == Ambient::R3) && n == 4;
  if (drop_last) {
    if (lift.psi[5].sup_norm() > 1e-14 * lift.psi.sup_norm()) {
      throw Error(ErrorCode::NotInS3, "write_immersion: lift does not lie in the standard S^3");
    }
    n = 3;
  }
  if (required_dim(ambient) != 0 && required_dim(ambient) != n) {
    throw Error(ErrorCode::DimensionMismatch, "write_immersion: ambient does not match lift dimension");
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  out << "torus-immersion v1\n";
  out << "ambient " << ambient_name(ambient) << " dim " << n << "\n";
  out << "periods " << g.p1 << " " << g.p2 << "\n";
  out << "grid " << g.n1 << " " << g.n2 << "\n";
  for (int j = 0; j < g.n1; ++j) {
    for (int k = 0; k < g.n2; ++k) {
      const std::size_t p = g.index(j, k);
      std::vector<double> v(n + 2);
      for (int c = 0; c < n + 2; ++c) v[c] = lift.psi[c][p].real();
      out << j << " " << k;
      switch (ambient) {
        case Ambient::Lightcone:
          for (double x : v) out << " " << x;
          break;
        case Ambient::S3:
        case Ambient::S4:
          for (int c = 1; c <= n + 1; ++c) out << " " << v[c] / v[0];
          break;
        case Ambient::R3:
        case Ambient::R4:
          for (int c = 1; c <= n; ++c) out << " " << v[c] / (v[0] + v[n + 1]);
          break;
      }
      out << "\n";
    }
  }
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace dslab
