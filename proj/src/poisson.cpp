#include "hrg/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace hrg {

Matrix poisson_apply(const OperatorFamily& f, const PolySpec& p) {
    return poisson_s_apply(f, p, 1.0);
}

Matrix poisson_s_apply(const OperatorFamily& f, const PolySpec& p, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw InputError("BadGrid", "s must lie in (0,1]");
    Matrix out = p.unit * Matrix::Identity(f.dim(), f.dim());
    for (const auto& t : p.terms) {
        const double w = std::pow(s, t.mu.degree.total() + t.nu.degree.total());
        out += (t.coeff * w) * (f.global(t.mu) * f.global(t.nu).adjoint());
    }
    return out;
}

std::string to_string(VnVerdict v) {
    switch (v) {
        case VnVerdict::Pass: return "PASS";
        case VnVerdict::Consistent: return "CONSISTENT";
        case VnVerdict::Violation: return "VIOLATION";
        case VnVerdict::NotApplicable: return "NOT_APPLICABLE";
    }
    return "?";
}

namespace {

// exact Fock norms for the shapes where they are known in closed form:
// a plain unit multiple, a single monomial c L_mu, or a one-color row
// polynomial sum gamma_lambda L_lambda (norm per source vertex).
std::optional<double> exact_fock_norm(const KGraph& g, const PolySpec& p) {
    if (p.terms.empty()) return std::abs(p.unit);
    if (p.unit != Complex(0, 0)) return std::nullopt;
    for (const auto& t : p.terms)
        if (!t.nu.degree.is_zero() || !(t.nu == g.vertex_path(g.source(t.mu))))
            return std::nullopt;
    if (p.terms.size() == 1) return std::abs(p.terms[0].coeff); // L_mu is a partial isometry
    const Degree d0 = p.terms[0].mu.degree;
    if (d0.total() != 1) return std::nullopt;
    for (const auto& t : p.terms)
        if (t.mu.degree != d0) return std::nullopt;
    std::vector<double> per_source(g.vertex_count(), 0.0);
    for (const auto& t : p.terms)
        per_source[g.source(t.mu)] += std::norm(t.coeff);
    return std::sqrt(*std::max_element(per_source.begin(), per_source.end()));
}

} // namespace

VnReport vn_report(const OperatorFamily& f, const PolySpec& p, const Degree& n_max,
                   const Tolerances& tol) {
    const KGraph& g = f.graph();
    VnReport rep;
    rep.popescu_pass = popescu_check(f, default_s_grid(), tol).popescu_pass;
    rep.norm_pv = operator_norm(poisson_apply(f, p), tol);
    rep.exact_norm = exact_fock_norm(g, p);

    int levels = 0;
    for (int j = 0; j < n_max.rank(); ++j) levels = std::max(levels, n_max[j]);
    for (int k = 0; k <= levels; ++k) {
        std::vector<int> c(n_max.rank());
        for (int j = 0; j < n_max.rank(); ++j) c[j] = std::min(k, n_max[j]);
        FockBasis basis(f.graph_ptr(), Degree{c});
        rep.lower_bounds.push_back(restricted_norm(basis, p, tol));
    }

    if (!rep.popescu_pass) {
        rep.verdict = VnVerdict::NotApplicable;
        return rep;
    }
    if (rep.exact_norm) {
        rep.verdict = rep.norm_pv <= *rep.exact_norm + tol.vn_slack ? VnVerdict::Pass
                                                                    : VnVerdict::Violation;
        return rep;
    }
    const std::size_t n = rep.lower_bounds.size();
    rep.stagnated = n >= 3 &&
                    std::abs(rep.lower_bounds[n - 1] - rep.lower_bounds[n - 2]) < tol.stagnation &&
                    std::abs(rep.lower_bounds[n - 2] - rep.lower_bounds[n - 3]) < tol.stagnation;
    const double ell = rep.lower_bounds.back();
    if (rep.norm_pv > ell * (1.0 + tol.vn_slack) && rep.stagnated)
        rep.verdict = VnVerdict::Violation;
    else
        rep.verdict = VnVerdict::Consistent;
    return rep;
}

CuntzReport cuntz_welldefined_check(const OperatorFamily& f, const Tolerances& tol) {
    const KGraph& g = f.graph();
    CuntzReport rep;
    rep.applicable = f.is_isometry();

    std::vector<Path> small;
    std::vector<int> c(g.rank(), 0);
    while (true) {
        for (const Path& p : g.enumerate(Degree{std::vector<int>(c)})) small.push_back(p);
        int j = g.rank() - 1;
        while (j >= 0) {
            if (++c[j] <= 1) break;
            c[j] = 0;
            --j;
        }
        if (j < 0) break;
    }

    for (const Path& mu : small)
        for (const Path& nu : small) {
            if (g.source(mu) != g.source(nu)) continue;
            const Matrix base = f.global(mu) * f.global(nu).adjoint();
            for (int j = 0; j < g.rank(); ++j) {
                Matrix refined = Matrix::Zero(f.dim(), f.dim());
                for (const Path& gam : g.enumerate(Degree::unit(g.rank(), j), g.source(mu)))
                    refined += f.global(g.compose(mu, gam)) * f.global(g.compose(nu, gam)).adjoint();
                rep.max_residual = std::max(rep.max_residual, operator_norm(base - refined, tol));
            }
        }
    return rep;
}

Matrix weighted_poisson(const OperatorFamily& f, const Matrix& d, const PolySpec& p,
                        const Tolerances& tol) {
    if (d.rows() != f.dim() || d.cols() != f.dim())
        throw InputError("ShapeMismatch", "weight must be dim x dim");
    const KGraph& g = f.graph();
    double worst = 0.0;
    Matrix diag = Matrix::Zero(f.dim(), f.dim());
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
        const Matrix va = f.vertex_projector(a);
        diag += va * d * va;
    }
    worst = std::max(worst, (diag - d).norm());
    for (int j = 0; j < g.rank(); ++j) {
        Matrix acc = Matrix::Zero(f.dim(), f.dim());
        for (const Path& lam : g.enumerate(Degree::unit(g.rank(), j))) {
            const Matrix v = f.global(lam);
            acc += v * d * v.adjoint();
        }
        worst = std::max(worst, (acc - d).norm());
    }
    if (worst > tol.residual * std::max(1.0, d.norm()))
        throw CheckError("NotInvariant", "invariance residual " + std::to_string(worst));

    Matrix out = p.unit * d;
    for (const auto& t : p.terms)
        out += t.coeff * (f.global(t.mu) * d * f.global(t.nu).adjoint());
    return out;
}

} // namespace hrg
