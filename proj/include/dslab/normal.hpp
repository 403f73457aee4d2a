#pragma once

// Sections of the complexified rank-2 Moebius normal bundle, written in an
// oriented orthonormal frame (xi1, xi2) with J xi1 = xi2, and the normal
// connection D_z xi1 = rho xi2.

#include "dslab/grid.hpp"

namespace dslab {

struct NormalSection {
  Field s1, s2;

  NormalSection() = default;
  explicit NormalSection(const TorusGrid& g) : s1(g), s2(g) {}
  NormalSection(Field a, Field b) : s1(std::move(a)), s2(std::move(b)) {}

  const TorusGrid& grid() const { return s1.grid(); }

  NormalSection& operator+=(const NormalSection& o);
  NormalSection& operator-=(const NormalSection& o);
  NormalSection& operator*=(cplx s);
  NormalSection& operator*=(const Field& f);
  friend NormalSection operator+(NormalSection a, const NormalSection& b) { return a += b; }
  friend NormalSection operator-(NormalSection a, const NormalSection& b) { return a -= b; }
  friend NormalSection operator*(cplx s, NormalSection a) { return a *= s; }
  friend NormalSection operator*(const Field& f, NormalSection a) { return a *= f; }

  NormalSection conj() const { return {s1.conj(), s2.conj()}; }
  NormalSection J() const { return {-s2, s1}; }
  double sup_norm() const { return std::max(s1.sup_norm(), s2.sup_norm()); }
  /// Componentwise real / imaginary parts in the (real) frame.
  NormalSection re() const { return {s1.real(), s2.real()}; }
  NormalSection im() const { return {s1.imag(), s2.imag()}; }
};

/// Complex-bilinear pairing.
Field dot(const NormalSection& a, const NormalSection& b);

/// Covariant calculus on normal sections for a chart rotated by `phase`.
/// `rho` is the z-coefficient in that chart.
class NormalCalculus {
 public:
  NormalCalculus(Field rho, cplx phase) : rho_(std::move(rho)), rho_bar_(rho_.conj()), phase_(phase) {}

  const Field& rho() const { return rho_; }
  cplx phase() const { return phase_; }

  Field dz(const Field& f) const { return d_z(f, phase_); }
  Field dzb(const Field& f) const { return d_zbar(f, phase_); }

  NormalSection Dz(const NormalSection& s) const;
  NormalSection Dzb(const NormalSection& s) const;

 private:
  Field rho_, rho_bar_;
  cplx phase_;
};

/// s1 xi1 + s2 xi2
VecField to_ambient(const NormalSection& s, const VecField& xi1, const VecField& xi2);

}  // namespace dslab
