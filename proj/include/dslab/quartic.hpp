#pragma once

// Bryant's quartic differential in the S^3 trivialization and the
// willmore / cmc / neither classification built on it.

#include <string>
#include <vector>

#include "dslab/stationarity.hpp"

namespace dslab {

/// kappa against the unit normal of a surface in the standard S^3.
/// Throws NotInS3.
Field scalar_hopf(const InvariantData& inv);

/// 4 (k k_zbarz + |k|^2 k^2 - k_zbar k_z)
Field bryant_q(const InvariantData& inv);

/// ||Q_zbar|| / (||Q|| + 1e-300)
double holomorphicity_residual(const Field& q, cplx phase = 1.0);

enum class VossBranch { Willmore, Cmc, Neither };

const char* branch_name(VossBranch b);

struct QuarticReport {
  Field q;
  double holo_residual = 0;
  std::vector<bool> umbilic_mask;
  /// (k_zbarzbar + c-bar k / 2) / k on unmasked points, 0 elsewhere.
  Field lambda;
  cplx lambda_mean = 0;
  /// (max - min) of Re and Im parts over unmasked points, summed.
  double lambda_spread = 0;
  double lambda_antiholo_residual = 0;
  VossBranch branch = VossBranch::Neither;
};

QuarticReport voss_classify(const InvariantData& inv, double umbilic_eps = kUmbilicEps, double tol = 1e-6);

struct ScalarIntegrability {
  double gauss = 0;     // c_zbar / 2 - (|k|^2)_z - 2 conj(k)_z k
  double codazzi = 0;   // Im(k_zbarzbar + c-bar k / 2)
  double identity = 0;  // k^2 lambda_z against its expansion, unmasked points
};

ScalarIntegrability scalar_integrability(const InvariantData& inv, double umbilic_eps = kUmbilicEps);

}  // namespace dslab
