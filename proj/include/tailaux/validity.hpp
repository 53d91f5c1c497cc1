#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailaux/auxiliary.hpp"
#include "tailaux/numerics.hpp"

namespace tailaux {

enum class CheckVerdict { Pass, Fail, Inconclusive };
enum class Validity { Valid, Invalid, Inconclusive };

const char* to_string(CheckVerdict v);
const char* to_string(Validity v);

struct Trail {
  std::vector<double> x;
  std::vector<double> value;
};

// Evaluate psi over the grid, NaN entries kept (they mark point-wise
// failures in reports; limit estimation skips them).
Trail sweep(const AuxiliaryFunction& psi, const ProbeGrid& grid);

// Membership in P_gamma.  gamma = 0: psi' -> 0 (absolute tolerance
// 1e-3 on the zero target); gamma > 0: psi(x)/x -> gamma; gamma < 0:
// psi(x)/(x_e - x) -> -gamma, both to relative tol.
struct PGammaResult {
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  Trail trail;
  LimitEstimate est;
  double target = 0.0;
  std::string detail;
};

PGammaResult check_property_p_gamma(const AuxiliaryFunction& psi, double gamma,
                                    const ProbeGrid& grid, double tol = 1e-2);

// Variation-representation validity: psi/psi_u -> 1 along the grid.
struct VrResult {
  Validity verdict = Validity::Inconclusive;
  Trail ratio_trail;
  LimitEstimate est;
  std::string detail;
};

VrResult check_vr_validity(const AuxiliaryFunction& psi, const AuxiliaryFunction& psi_u,
                           const ProbeGrid& grid, double tol = 1e-2);

// von Mises representation validity: K(x) = int_z^x (1/psi - 1/psi_u)
// must possess a finite limit.  The trail is cumulative quadrature
// between grid points; a singular integrand turns the verdict
// inconclusive with the offending subinterval in .detail.  The p_gamma
// verdict gates the final answer (membership in P_gamma is part of the
// definition), but the K trail is always computed for the report.
struct VmrResult {
  Validity verdict = Validity::Inconclusive;
  double z = 0.0;
  std::optional<double> k_z;
  Trail k_trail;
  LimitEstimate est;
  std::string detail;
};

VmrResult check_vmr_validity(const AuxiliaryFunction& psi, const AuxiliaryFunction& psi_u,
                             double z, const ProbeGrid& grid,
                             CheckVerdict p_gamma = CheckVerdict::Pass, double tol = 1e-2);

// Tail-index readback: the limit of psi(x)/x (infinite endpoint) or
// psi(x)/(x - x_e) (finite endpoint) along the grid.
struct GammaEstimate {
  LimitEstimate est;
  std::optional<double> value;
  Trail trail;
};

GammaEstimate estimate_gamma_from_psi(const AuxiliaryFunction& psi, double x_e,
                                      const ProbeGrid& grid, double tol = 1e-2);

// F_bar F'' / (F')^2 -> -1, evaluated as (F_bar/F') * (F''/F') so the
// deep tail never underflows.  Needs log_density and dd_ratio.
struct VonMisesResult {
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  Trail trail;
  LimitEstimate est;
  std::string detail;
};

VonMisesResult check_von_mises_condition(const DistributionSpec& spec, const ProbeGrid& grid,
                                         double tol = 1e-2);

// Combined report.  Construction enforces the subset law (a vMR-valid
// verdict may never ride with a non-valid VR verdict); when the raw
// verdicts would violate it, the vMR side is downgraded to inconclusive
// and the event is recorded in .downgraded.
struct ValidityReport {
  std::string dist_desc;
  std::string psi_desc;
  PGammaResult p_gamma;
  VrResult vr;
  VmrResult vmr;
  std::optional<double> k_z;
  bool consistency_flag = true;
  bool downgraded = false;
  std::string classification;  // vmr-valid | vr-only | invalid | inconclusive
  int exit_code = 5;
};

ValidityReport make_validity_report(std::string dist_desc, std::string psi_desc,
                                    PGammaResult pg, VrResult vr, VmrResult vmr);

// One candidate against one reference: P_gamma, VR and vMR (K started
// at the first grid point), composed into the combined report.
ValidityReport classify_pair(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                             const AuxiliaryFunction& psi_u, const ProbeGrid& grid,
                             double tol = 1e-2);

// Full catalog sweep: every member against its catalog forms, the
// classic constructions for its tail class, and three perturbed
// candidates.  subset_violations counts emitted reports breaking the
// subset law (always 0 by construction); downgrades counts how often
// enforcement had to intervene (0 means the numerics never contradicted
// the theorem).
struct CorpusEntry {
  std::string dist;
  std::string psi;
  ValidityReport report;
};

struct CorpusResult {
  std::vector<CorpusEntry> entries;
  int subset_violations = 0;
  int downgrades = 0;
};

CorpusResult run_corpus_sweep(double tol = 1e-2);

}  // namespace tailaux
