#pragma once

#include <map>
#include <string>

#include "hrg/errors.hpp"

namespace hrg {

// Every numeric threshold used by the checks lives here, so a report can
// state exactly the slack it was produced under.
struct Tolerances {
    double hermitian_rel = 1e-12;   // ||A - A*||_F <= tol * ||A||_F
    double eig_residual_rel = 1e-11;
    double opnorm_rel = 1e-12;      // power iteration convergence
    double psd_slack = 1e-10;       // accept min eig >= -slack * max(1, scale)
    double rank_rel = 1e-10;        // Gram / kernel rank threshold
    double gram_entry = 1e-9;
    double family_eq = 1e-10;       // square consistency, defect identities
    double residual = 1e-9;         // dilation / TCK / GNS assertions
    double kernel_invariance = 1e-10;
    double roundtrip = 1e-8;        // Kolmogorov round trip
    double character_eq = 1e-12;
    double unimodular = 1e-12;
    double vn_slack = 1e-9;
    double stagnation = 1e-10;

    std::map<std::string, double Tolerances::*> fields() const {
        return {
            {"hermitian_rel", &Tolerances::hermitian_rel},
            {"eig_residual_rel", &Tolerances::eig_residual_rel},
            {"opnorm_rel", &Tolerances::opnorm_rel},
            {"psd_slack", &Tolerances::psd_slack},
            {"rank_rel", &Tolerances::rank_rel},
            {"gram_entry", &Tolerances::gram_entry},
            {"family_eq", &Tolerances::family_eq},
            {"residual", &Tolerances::residual},
            {"kernel_invariance", &Tolerances::kernel_invariance},
            {"roundtrip", &Tolerances::roundtrip},
            {"character_eq", &Tolerances::character_eq},
            {"unimodular", &Tolerances::unimodular},
            {"vn_slack", &Tolerances::vn_slack},
            {"stagnation", &Tolerances::stagnation},
        };
    }

    void set(const std::string& name, double value) {
        auto m = fields();
        auto it = m.find(name);
        if (it == m.end()) throw InputError("UnknownTolerance", "no tolerance named '" + name + "'");
        this->*(it->second) = value;
    }
};

} // namespace hrg
