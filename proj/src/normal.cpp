#include "dslab/normal.hpp"

namespace dslab {

NormalSection& NormalSection::operator+=(const NormalSection& o) {
  s1 += o.s1;
  s2 += o.s2;
  return *this;
}

NormalSection& NormalSection::operator-=(const NormalSection& o) {
  s1 -= o.s1;
  s2 -= o.s2;
  return *this;
}

NormalSection& NormalSection::operator*=(cplx s) {
  s1 *= s;
  s2 *= s;
  return *this;
}

NormalSection& NormalSection::operator*=(const Field& f) {
  s1 *= f;
  s2 *= f;
  return *this;
}

Field dot(const NormalSection& a, const NormalSection& b) {
  Field out = a.s1 * b.s1;
  out.add_product(a.s2, b.s2);
  return out;
}

NormalSection NormalCalculus::Dz(const NormalSection& s) const {
  NormalSection out{dz(s.s1), dz(s.s2)};
  out.s1 -= rho_ * s.s2;
  out.s2.add_product(rho_, s.s1);
  return out;
}

NormalSection NormalCalculus::Dzb(const NormalSection& s) const {
  NormalSection out{dzb(s.s1), dzb(s.s2)};
  out.s1 -= rho_bar_ * s.s2;
  out.s2.add_product(rho_bar_, s.s1);
  return out;
}

VecField to_ambient(const NormalSection& s, const VecField& xi1, const VecField& xi2) {
  VecField out(xi1.grid(), xi1.sphere_dim());
  out.add_scaled(s.s1, xi1);
  out.add_scaled(s.s2, xi2);
  return out;
}

}  // namespace dslab
