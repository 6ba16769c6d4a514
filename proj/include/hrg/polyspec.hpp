#pragma once

#include <map>
#include <vector>

#include "hrg/kgraph.hpp"
#include "hrg/types.hpp"

namespace hrg {

// Formal operator polynomial c0 * 1 + sum c_{mu,nu} L_mu L_nu*.
struct PolyTerm {
    Path mu;
    Path nu;
    Complex coeff;
};

struct PolySpec {
    Complex unit{0.0, 0.0};
    std::vector<PolyTerm> terms;

    static PolySpec monomial(const Path& mu, const Path& nu, Complex c) {
        return PolySpec{Complex(0, 0), {PolyTerm{mu, nu, c}}};
    }

    // merge duplicate (mu, nu) keys, drop exact-zero coefficients
    void normalize() {
        std::map<std::pair<Path, Path>, Complex> acc;
        for (const auto& t : terms) acc[{t.mu, t.nu}] += t.coeff;
        terms.clear();
        for (const auto& [key, c] : acc)
            if (c != Complex(0, 0)) terms.push_back({key.first, key.second, c});
    }

    // componentwise max of sigma(mu) over terms (output degree growth)
    Degree max_mu_degree(int rank) const {
        Degree d = Degree::zero(rank);
        for (const auto& t : terms) d = d.join(t.mu.degree);
        return d;
    }

    bool analytic() const { // no adjoint part: every nu is a vertex
        for (const auto& t : terms)
            if (!t.nu.degree.is_zero()) return false;
        return true;
    }
};

// Product in T_Lambda, expanded through relation L_nu* L_mu = sum over
// MCE(nu, mu) of L_alpha L_beta*.
inline PolySpec poly_multiply(const KGraph& g, const PolySpec& p, const PolySpec& q) {
    PolySpec out;
    out.unit = p.unit * q.unit;
    for (const auto& t : p.terms) out.terms.push_back({t.mu, t.nu, t.coeff * q.unit});
    for (const auto& t : q.terms) out.terms.push_back({t.mu, t.nu, t.coeff * p.unit});
    for (const auto& a : p.terms)
        for (const auto& b : q.terms)
            for (const auto& w : g.mce(a.nu, b.mu)) {
                // L_a.mu (L_alpha L_beta*) L_b.nu*
                if (g.source(a.mu) != g.range(w.alpha)) continue;
                if (g.source(b.nu) != g.range(w.beta)) continue;
                out.terms.push_back(
                    {g.compose(a.mu, w.alpha), g.compose(b.nu, w.beta), a.coeff * b.coeff});
            }
    out.normalize();
    return out;
}

// coefficient rotation under the gauge action: c_{mu,nu} -> z^{sigma(mu)} conj(z)^{sigma(nu)} c
inline PolySpec gauge_rotate(const PolySpec& p, const std::vector<Complex>& z) {
    auto phase = [&](const Degree& d) {
        Complex w(1, 0);
        for (int j = 0; j < d.rank(); ++j)
            for (int k = 0; k < d[j]; ++k) w *= z[j];
        return w;
    };
    PolySpec out = p;
    for (auto& t : out.terms) t.coeff *= phase(t.mu.degree) * std::conj(phase(t.nu.degree));
    return out;
}

} // namespace hrg
