#include <doctest.h>

#include "support.hpp"

using namespace dslab;
using testing::kClifford;
using testing::thrown_code;

TEST_CASE("anchor quartics") {
  const InvariantData cl = compute_invariants(homogeneous_torus(kClifford, kClifford, 32, 32));
  CHECK(std::abs(std::abs(scalar_hopf(cl).mean()) - 0.5) < 1e-12);
  const QuarticReport c = voss_classify(cl);
  CHECK(max_abs_diff(c.q, Field(cl.grid(), 0.25)) < 1e-9);
  CHECK(c.holo_residual < 1e-9);
  CHECK(c.branch == VossBranch::Willmore);
  CHECK(std::string(branch_name(c.branch)) == "willmore");

  const double ab4 = std::pow(4 * 0.6 * 0.8, 4);
  const InvariantData h = compute_invariants(homogeneous_torus(0.6, 0.8, 32, 32));
  const QuarticReport q = voss_classify(h);
  CHECK(max_abs_diff(q.q, Field(h.grid(), 4 / ab4)) < 1e-9);
  CHECK(q.holo_residual < 1e-9);
  CHECK(q.branch == VossBranch::Cmc);
  CHECK(std::abs(q.lambda_mean - 0.28 / (8 * 0.2304)) < 1e-9);
  CHECK(q.lambda_spread < 1e-9);
  CHECK(q.lambda_antiholo_residual < 1e-9);
}

TEST_CASE("perturbed surfaces fall in neither branch") {
  const InvariantData p = compute_invariants(perturb_profile(kClifford, kClifford, 1e-2, 2, 64, 64).lift);
  const QuarticReport r = voss_classify(p);
  CHECK(r.holo_residual > 1e-5);
  CHECK(r.branch == VossBranch::Neither);
  const ScalarIntegrability s = scalar_integrability(p);
  CHECK(s.gauss < 1e-8);
  CHECK(s.codazzi < 1e-8);
  CHECK(s.identity < 1e-6);
}

TEST_CASE("quartic is Moebius invariant within the 3-sphere") {
  const LiftField l = perturb_profile(0.6, 0.8, 1e-2, 3, 64, 64).lift;
  LiftField l3{VecField(l.grid(), 3), false};
  for (int c = 0; c < 5; ++c) l3.psi[c] = l.psi[c];
  const Field q = bryant_q(compute_invariants(l3));
  const Field q2 = bryant_q(compute_invariants(testing::apply(random_lorentz(5, 0.5, 3), l3)));
  CHECK(max_abs_diff(q, q2) < 1e-9);
  CHECK(holomorphicity_residual(q) > 1e-5);
}

TEST_CASE("quartic preconditions") {
  const InvariantData p = compute_invariants(product_torus(0.6, 0.8, 2e-2, 2, 3, 32, 32));
  CHECK(thrown_code([&] { scalar_hopf(p); }) == ErrorCode::NotInS3);
  CHECK(thrown_code([&] { voss_classify(p); }) == ErrorCode::NotInS3);
  const InvariantData h = compute_invariants(homogeneous_torus(0.6, 0.8, 16, 16));
  CHECK(thrown_code([&] { voss_classify(h, 2.0); }) == ErrorCode::AllUmbilic);
}
