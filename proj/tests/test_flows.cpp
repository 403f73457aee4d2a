#include <doctest.h>

#include "support.hpp"

using namespace dslab;
using testing::kClifford;
using testing::thrown_code;

TEST_CASE("DS velocity of surfaces in the 3-sphere has no tangential part") {
  for (const LiftField& l : {homogeneous_torus(0.6, 0.8, 32, 32),
                             perturb_profile(kClifford, kClifford, 1e-2, 2, 48, 48).lift}) {
    const InvariantData inv = compute_invariants(l);
    const FlowVelocity v = ds_velocity(inv);
    CHECK(v.b.sup_norm() == 0.0);
    CHECK(v.a.sup_norm() == 0.0);
    CHECK(v.chi.sup_norm() == 0.0);
    CHECK(max_abs_diff(v.sigma.s1, Field(inv.grid())) == 0.0);
    CHECK(v.sigma.s2.sup_norm() > 0.1);
  }
}

TEST_CASE("Clifford velocity is a constant normal vector") {
  const InvariantData inv = compute_invariants(homogeneous_torus(kClifford, kClifford, 32, 32));
  const VecField V = lift_velocity(inv, ds_velocity(inv));
  VecField e5(inv.grid(), 4);
  e5[5] = Field(inv.grid(), 1.0);
  CHECK(max_abs_diff(V, -1.0 * e5) < 1e-12);
}

TEST_CASE("DS velocity off the 3-sphere") {
  // Products of curves have a flat normal bundle, so the tangential part vanishes there too.
  const InvariantData inv = compute_invariants(product_torus(0.6, 0.8, 2e-2, 2, 3, 32, 32));
  const FlowVelocity v = ds_velocity(inv);
  CHECK(dot(inv.kappa.conj().J(), inv.kappa).sup_norm() < 1e-12);
  CHECK(v.b.sup_norm() < 1e-12);
  CHECK(v.sigma.s1.sup_norm() > 1e-3);
  CHECK(v.sigma.s2.sup_norm() > 1e-3);
  const VecField V = lift_velocity(inv, v);
  CHECK(mink_dot(V, inv.lift.psi).sup_norm() < 1e-12);
  for (int c = 0; c < V.dim(); ++c) CHECK(V[c].imag().sup_norm() == 0.0);
}

TEST_CASE("special flows") {
  const InvariantData inv = compute_invariants(product_torus(0.6, 0.8, 2e-2, 2, 3, 32, 32));
  const InvariantRates z = deform_invariants(inv, zeroth_flow(inv.grid()));
  CHECK(z.c.sup_norm() < 1e-12);
  CHECK(dot(z.kappa, inv.kappa.conj()).real().sup_norm() < 1e-12);

  const cplx b0(0.3, -0.2);
  const Field zero(inv.grid());
  const FlowVelocity translate{NormalSection(inv.grid()), Field(inv.grid(), b0), zero, zero};
  const InvariantRates general = deform_invariants(inv, translate);
  const InvariantRates special = first_flow(inv, b0);
  CHECK(max_abs_diff(general.c, special.c) < 1e-10);
  CHECK((general.kappa - special.kappa).sup_norm() < 1e-10);
  CHECK(max_abs_diff(general.connection, special.connection) < 1e-10);
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme("rk4") == Scheme::RK4);
  CHECK(std::string(scheme_name(parse_scheme("euler"))) == "euler");
  CHECK(thrown_code([] { parse_scheme("midpoint"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("evolution keeps fixed points and records a trace") {
  const LiftField cl = homogeneous_torus(kClifford, kClifford, 32, 32);
  const EvolveResult r = evolve(cl, 1e-3, 20);
  REQUIRE(r.trace.size() == 21);
  CHECK(r.trace.back().t == doctest::Approx(0.02));
  for (const FlowRecord& q : r.trace) {
    CHECK(q.conformality < 1e-10);
    CHECK(std::abs(q.kappa_sup - 0.5) < 1e-10);
    CHECK(q.c_sup < 1e-10);
  }
  const EvolveResult none = evolve(cl, 1e-3, 0);
  CHECK(none.trace.size() == 1);
  CHECK(max_abs_diff(none.psi.psi, cl.psi) == 0.0);
  CHECK(max_abs_diff(flow_step(embed_s3(cl).lift, 0.0).psi, embed_s3(cl).lift.psi) == 0.0);
  CHECK(thrown_code([&] { evolve(cl, 1e-3, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("oversized steps are rejected") {
  CHECK(thrown_code([] { evolve(homogeneous_torus(0.6, 0.8, 32, 32), 10.0, 1); }) == ErrorCode::StepRejected);
  CHECK(thrown_code([] { evolve(product_torus(0.6, 0.8, 2e-2, 2, 3, 32, 32), 10.0, 1); }) == ErrorCode::StepRejected);
}

TEST_CASE("Euler is first order against RK4") {
  const LiftField p = product_torus(kClifford, kClifford, 1e-2, 2, 3, 32, 32);
  auto gap = [&](double dt) {
    const InvariantData e = compute_invariants(flow_step(p, dt, Scheme::Euler));
    const InvariantData r = compute_invariants(flow_step(p, dt, Scheme::RK4));
    return max_abs_diff(kappa_norm2(e), kappa_norm2(r));
  };
  const double ratio = gap(4e-3) / gap(2e-3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("evolution agrees with the closed-form rates") {
  const LiftField p = product_torus(kClifford, kClifford, 1e-2, 2, 3, 32, 32);
  const FlowConsistency fc = flow_consistency(p, 2e-4);
  CHECK(fc.c < 1e-6);
  CHECK(fc.kappa2 < 1e-6);
  // Surfaces in the 3-sphere do not move their invariants at all.
  CHECK(flow_consistency(homogeneous_torus(0.6, 0.8, 32, 32), 1e-4).total() < 1e-9);
}
