#pragma once

// Stationarity of the Davey-Stewartson flow, its S^3 specialization, strong
// isothermicity and the constrained Willmore equation.

#include <array>
#include <optional>

#include "dslab/flows.hpp"

namespace dslab {

inline constexpr double kTolStat = 1e-6;
inline constexpr double kUmbilicEps = 1e-6;

/// Points with |kappa| <= eps * max |kappa|.
std::vector<bool> umbilic_mask(const InvariantData& inv, double eps = kUmbilicEps);

struct StationarityReport {
  cplx alpha = 0, beta = 0;
  Field mu;
  cplx mu_mean = 0;
  double mu_sup = 0;
  /// Relative sup residuals of the six equations, in order.
  std::array<double, 6> residuals{};
  double total = 0;
  /// Real dimension of the null space of the (alpha, beta) columns.
  int dim_null = 0;
  std::size_t masked = 0;
  bool verdict = false;
};

/// Least-squares fit of alpha, beta (and pointwise mu) to the stationarity
/// system for the velocity `v`.
StationarityReport fit_stationarity(const InvariantData& inv, const FlowVelocity& v, double tol_stat = kTolStat,
                                    double umbilic_eps = kUmbilicEps);

struct S3Decomposition {
  cplx mu = 0;
  double r16 = 0;      // D_z D_z kappa + c kappa / 2 + mu kappa, mu constant
  int null16 = 0;      // real null dimension of (alpha, beta) -> alpha D_z kappa + conj(beta) D_zbar kappa
  double sigma16 = 0;  // its smallest relative singular value
  int null18 = 0;      // same for alpha c_z + conj(beta) c_zbar
  double sigma18 = 0;
  double r21 = 0;      // <D_zbar kappa-bar, kappa> - <D_zbar kappa, kappa-bar>
};

/// Throws NotInS3 unless the surface lies in the 3-sphere of `inv.s3`.
S3Decomposition s3_decompose(const InvariantData& inv);

struct IsothermicFit {
  double theta = 0;
  double residual = 0;
};

/// Global phase rotation minimizing the imaginary part of e^{2 i theta} kappa.
IsothermicFit strong_isothermic_phase(const InvariantData& inv);

struct WillmoreFit {
  cplx lambda = 0;
  double residual = 0;
};

/// Constant lambda fitting D_zbar D_zbar kappa + c-bar kappa / 2 = Re(lambda kappa).
WillmoreFit constrained_willmore_fit(const InvariantData& inv);

struct ClassificationReport {
  IsothermicFit isothermic;
  bool strongly_isothermic = false;
  WillmoreFit willmore_fit;
  bool constrained_willmore = false;
  bool willmore = false;
  StationarityReport stationarity;
  bool ds_stationary = false;
  bool cmc = false;
  /// The stationarity criterion is only asserted for surfaces in S^3.
  bool theorem_applicable = false;
  bool consistent = true;
};

ClassificationReport classify(const InvariantData& inv, double tol_stat = kTolStat, double umbilic_eps = kUmbilicEps);

}  // namespace dslab
