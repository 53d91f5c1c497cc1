#pragma once

#include "tailaux/aux_function.hpp"
#include "tailaux/distributions.hpp"

namespace tailaux {

// psi = -zeta/zeta' for an absolutely continuous tail-equivalent zeta.
// The derivative is the analytic one when supplied, otherwise a central
// difference; when both exist they are cross-checked at a few points
// and a disagreement beyond 1e-4 relative lands in .note.
AuxiliaryFunction psi_from_zeta(std::function<double(double)> zeta, double x_star,
                                std::function<double(double)> zeta_deriv = nullptr);

// Same, fed from the spec's registered zeta; throws std::domain_error
// if the spec has none.
AuxiliaryFunction psi_from_zeta(const DistributionSpec& spec);

// psi = F_bar/F', evaluated as exp(log survival - log density).
AuxiliaryFunction psi_reciprocal_hazard(const DistributionSpec& spec);

// The universal construction by tail class: iterated tail integrals for
// gamma = 0, x * int F_bar(u)/u du / F_bar for gamma > 0, and the
// mirrored form in x_e - x for gamma < 0.
AuxiliaryFunction psi_integral_universal(const DistributionSpec& spec);

enum class ClassicForm { MeanExcess, DoubleMeanExcess, LinearGamma };

// mean_excess and double_mean_excess are the Gumbel-context forms (they
// evaluate for any spec, convergence permitting); linear_gamma needs
// gamma != 0 and throws std::invalid_argument otherwise.
AuxiliaryFunction psi_classic(const DistributionSpec& spec, ClassicForm form);

enum class CatalogPsi { Universal, VrSimple };

// The closed-form catalog entries; throws std::invalid_argument when
// the spec carries none.
AuxiliaryFunction psi_catalog(const DistributionSpec& spec, CatalogPsi which);

}  // namespace tailaux
