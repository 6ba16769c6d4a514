#pragma once

#include <optional>
#include <string>

#include "hrg/family.hpp"
#include "hrg/fock.hpp"
#include "hrg/polyspec.hpp"

namespace hrg {

// p(V) = c0 I + sum c_{mu,nu} V_mu V_nu*
Matrix poisson_apply(const OperatorFamily& f, const PolySpec& p);

// terms weighted by s^{|mu|+|nu|}; agrees with poisson_apply at s = 1
Matrix poisson_s_apply(const OperatorFamily& f, const PolySpec& p, double s);

enum class VnVerdict { Pass, Consistent, Violation, NotApplicable };

std::string to_string(VnVerdict v);

struct VnReport {
    double norm_pv = 0.0;
    std::vector<double> lower_bounds; // restricted norms over growing boxes
    std::optional<double> exact_norm; // set when the Fock norm is analytically exact
    VnVerdict verdict = VnVerdict::Consistent;
    bool stagnated = false;
    bool popescu_pass = false;
};

// von Neumann inequality report. Lower bounds cannot prove the inequality,
// only refute or corroborate it; VIOLATION therefore additionally requires a
// stagnated lower-bound sequence unless the Fock norm is known exactly.
VnReport vn_report(const OperatorFamily& f, const PolySpec& p, const Degree& n_max,
                   const Tolerances& tol = {});

struct CuntzReport {
    double max_residual = 0.0;
    bool applicable = false; // family is a Lambda-isometry
};

// image of the ideal generators under the transform: V_mu V_nu* minus the
// degree-e_j refinement, for all mu, nu of degree <= (1,..,1)
CuntzReport cuntz_welldefined_check(const OperatorFamily& f, const Tolerances& tol = {});

// T_{V,D}: c0 D + sum c V_mu D V_nu*, after verifying the invariance of D
// for n = 0 and n = e_j. Throws NotInvariant.
Matrix weighted_poisson(const OperatorFamily& f, const Matrix& d, const PolySpec& p,
                        const Tolerances& tol = {});

} // namespace hrg
