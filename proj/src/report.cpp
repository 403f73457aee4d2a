#include "dslab/report.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>

namespace dslab {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json invariants_json(const InvariantData& inv, double tol_solv) {
  const TorusGrid& g = inv.grid();
  const IntegrabilityResiduals ir = integrability_residuals(inv);
  const FrameEquationResiduals fr = frame_equation_residuals(inv);
  const DegreeObstruction deg = degree_obstruction(inv, tol_solv);
  json j;
  j["grid"] = {g.n1, g.n2};
  j["periods"] = {g.p1, g.p2};
  j["in_s3"] = inv.s3.has_value();
  j["willmore"] = willmore_energy(inv);
  j["kappa_sup"] = kappa_sup(inv);
  j["c_sup"] = inv.c.sup_norm();
  j["c_mean"] = to_json(inv.c.mean());
  j["rho_sup"] = inv.rho.sup_norm();
  j["integrability"] = {{"gauss", ir.gauss}, {"codazzi", ir.codazzi}, {"ricci", ir.ricci}};
  j["frame_equations"] = {{"psi_zzbar", fr.psi_zzbar}, {"psi_hat_z", fr.psi_hat_z}};
  j["degree"] = {{"integral", to_json(deg.integral)}, {"trivial", deg.trivial}};
  const InvariantDiagnostics& d = inv.diag;
  j["diagnostics"] = {{"conformality", d.conformality},
                      {"normalization", d.normalization},
                      {"dual", d.dual},
                      {"kappa_orthogonality", d.kappa_orthogonality},
                      {"frame_orthonormality", d.frame_orthonormality},
                      {"lightcone", d.lightcone},
                      {"spectral_tail", d.spectral_tail}};
  return j;
}

json stationarity_json(const StationarityReport& r) {
  json j;
  j["alpha"] = to_json(r.alpha);
  j["beta"] = to_json(r.beta);
  j["mu_mean"] = to_json(r.mu_mean);
  j["mu_sup"] = r.mu_sup;
  json res;
  for (int i = 0; i < 6; ++i) res["r" + std::to_string(16 + i)] = r.residuals[i];
  res["total"] = r.total;
  j["residuals"] = res;
  j["rank"] = {{"dim_null", r.dim_null}};
  j["umbilic_points"] = r.masked;
  j["verdict"] = r.verdict;
  return j;
}

json classification_json(const ClassificationReport& r) {
  json j;
  j["strongly_isothermic"] = {
      {"flag", r.strongly_isothermic}, {"theta", r.isothermic.theta}, {"residual", r.isothermic.residual}};
  j["constrained_willmore"] = {{"flag", r.constrained_willmore},
                               {"lambda", to_json(r.willmore_fit.lambda)},
                               {"residual", r.willmore_fit.residual}};
  j["willmore"] = r.willmore;
  j["ds_stationary"] = r.ds_stationary;
  j["cmc"] = r.cmc;
  j["theorem_applicable"] = r.theorem_applicable;
  j["consistent"] = r.consistent;
  return j;
}

json s3_json(const S3Decomposition& d) {
  return {{"mu", to_json(d.mu)},   {"r16", d.r16},         {"null16", d.null16}, {"sigma16", d.sigma16},
          {"null18", d.null18},    {"sigma18", d.sigma18}, {"r21", d.r21}};
}

json quartic_json(const QuarticReport& r) {
  json j;
  j["branch"] = branch_name(r.branch);
  j["q_mean"] = to_json(r.q.mean());
  j["q_sup"] = r.q.sup_norm();
  j["holo_residual"] = r.holo_residual;
  j["lambda_mean"] = to_json(r.lambda_mean);
  j["lambda_spread"] = r.lambda_spread;
  j["lambda_antiholo_residual"] = r.lambda_antiholo_residual;
  j["umbilic_points"] = std::count(r.umbilic_mask.begin(), r.umbilic_mask.end(), true);
  // The branch is a global verdict; the mask only excludes umbilic grid points.
  j["verdict_scope"] = "global, umbilic points excluded";
  return j;
}

json trace_record_json(const FlowRecord& r) {
  return {{"t", r.t},           {"conf_residual", r.conformality}, {"willmore", r.willmore}, {"c_sup", r.c_sup},
          {"kappa_sup", r.kappa_sup}, {"gauss", r.gauss},        {"codazzi", r.codazzi},   {"ricci", r.ricci}};
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace

void write_field_dump(const std::filesystem::path& path, const InvariantData& inv, const QuarticReport* quartic) {
  std::ofstream out = open_out(path);
  out << "j,k,x,y,re_kappa1,im_kappa1,re_kappa2,im_kappa2,re_c,im_c,re_rho,im_rho";
  if (quartic) out << ",re_q,im_q,re_lambda,im_lambda,umbilic";
  out << '\n';
  const TorusGrid& g = inv.grid();
  for (int j = 0; j < g.n1; ++j) {
    for (int k = 0; k < g.n2; ++k) {
      const std::size_t p = g.index(j, k);
      out << j << ',' << k << ',' << g.x(j) << ',' << g.y(k);
      for (const Field* f : {&inv.kappa.s1, &inv.kappa.s2, &inv.c, &inv.rho}) {
        out << ',' << (*f)[p].real() << ',' << (*f)[p].imag();
      }
      if (quartic) {
        out << ',' << quartic->q[p].real() << ',' << quartic->q[p].imag() << ',' << quartic->lambda[p].real() << ','
            << quartic->lambda[p].imag() << ',' << (quartic->umbilic_mask[p] ? 1 : 0);
      }
      out << '\n';
    }
  }
  finish(out, path);
}

void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace) {
  std::ofstream out = open_out(path);
  out << "t,conf_residual,willmore,c_sup,kappa_sup,gauss,codazzi,ricci\n";
  for (const FlowRecord& r : trace) {
    out << r.t << ',' << r.conformality << ',' << r.willmore << ',' << r.c_sup << ',' << r.kappa_sup << ',' << r.gauss
        << ',' << r.codazzi << ',' << r.ricci << '\n';
  }
  finish(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace dslab
