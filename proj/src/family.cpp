#include "hrg/family.hpp"

#include <algorithm>
#include <cmath>

namespace hrg {

OperatorFamily::OperatorFamily(std::shared_ptr<const KGraph> g, std::vector<int> dims,
                               std::vector<Matrix> edge_blocks)
    : g_(std::move(g)), dims_(std::move(dims)), edge_blocks_(std::move(edge_blocks)) {
    if (static_cast<int>(dims_.size()) != g_->vertex_count())
        throw InputError("ShapeMismatch", "need one dimension per vertex");
    if (static_cast<int>(edge_blocks_.size()) != g_->edge_count())
        throw InputError("ShapeMismatch", "need one matrix per edge");
    offsets_.resize(dims_.size(), 0);
    for (std::size_t a = 0; a < dims_.size(); ++a) {
        if (dims_[a] < 0) throw InputError("ShapeMismatch", "negative block dimension");
        offsets_[a] = dim_;
        dim_ += dims_[a];
    }
    for (EdgeId e = 0; e < g_->edge_count(); ++e) {
        const Edge& ed = g_->edge(e);
        if (edge_blocks_[e].rows() != dims_[ed.range] || edge_blocks_[e].cols() != dims_[ed.source])
            throw InputError("ShapeMismatch", "edge '" + ed.name + "': expected " +
                                                  std::to_string(dims_[ed.range]) + "x" +
                                                  std::to_string(dims_[ed.source]));
    }
}

Matrix OperatorFamily::block(const Path& lambda) const {
    if (lambda.edges.empty()) {
        const int d = dims_[lambda.base];
        return Matrix::Identity(d, d);
    }
    Matrix m = edge_blocks_[lambda.edges.front()];
    for (std::size_t i = 1; i < lambda.edges.size(); ++i) m = m * edge_blocks_[lambda.edges[i]];
    return m;
}

Matrix OperatorFamily::global(const Path& lambda) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    const VertexId r = g_->range(lambda), s = g_->source(lambda);
    out.block(offsets_[r], offsets_[s], dims_[r], dims_[s]) = block(lambda);
    return out;
}

Matrix OperatorFamily::vertex_projector(VertexId a) const {
    return global(g_->vertex_path(a));
}

Matrix OperatorFamily::row_sum(const Degree& n) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const Path& lam : g_->enumerate(n)) {
        const Matrix v = global(lam);
        out += v * v.adjoint();
    }
    return out;
}

OperatorFamily validate_family(std::shared_ptr<const KGraph> g, std::vector<int> dims,
                               std::vector<Matrix> edge_blocks, const Tolerances& tol) {
    OperatorFamily f(std::move(g), std::move(dims), std::move(edge_blocks));
    const KGraph& gr = f.graph();

    // square consistency makes composition along canonical forms well defined
    double worst_square = 0.0;
    for (EdgeId e = 0; e < gr.edge_count(); ++e)
        for (EdgeId h = 0; h < gr.edge_count(); ++h) {
            if (gr.edge(e).source != gr.edge(h).range) continue;
            if (gr.edge(e).color >= gr.edge(h).color) continue;
            const Path w = gr.compose(gr.edge_path(e), gr.edge_path(h));
            const Matrix lhs = f.edge_block(e) * f.edge_block(h);
            const Matrix rhs = f.block(w);
            const double scale =
                std::max(1.0, f.edge_block(e).norm() * f.edge_block(h).norm());
            worst_square = std::max(worst_square, (lhs - rhs).norm() / scale);
        }
    if (worst_square > tol.family_eq)
        throw CheckError("RelationViolated",
                         "square consistency residual " + std::to_string(worst_square));

    bool isometry = true;
    for (int j = 0; j < gr.rank(); ++j) {
        const Matrix psi =
            Matrix::Identity(f.dim(), f.dim()) - f.row_sum(Degree::unit(gr.rank(), j));
        if (f.dim() == 0) continue;
        const double mineig = psd_min_eig((psi + psi.adjoint()) / 2.0, tol);
        if (mineig < -tol.psd_slack * std::max(1.0, psi.norm()))
            throw CheckError("RowContractionViolated",
                             "color " + std::to_string(j + 1) + ": most negative eigenvalue " +
                                 std::to_string(mineig));
        if (psi.cwiseAbs().maxCoeff() > tol.family_eq) isometry = false;
    }
    f.set_isometry_flag(isometry);
    return f;
}

Matrix extend_to_path(const OperatorFamily& f, const Path& lambda) { return f.block(lambda); }

Matrix defect(const OperatorFamily& f, double s) {
    const int r = f.graph().rank();
    Matrix out = Matrix::Zero(f.dim(), f.dim());
    std::vector<int> c(r, 0);
    while (true) {
        const Degree n{std::vector<int>(c)};
        const double w = std::pow(-s * s, n.total());
        out += w * f.row_sum(n);
        int j = r - 1;
        while (j >= 0) {
            if (++c[j] <= 1) break;
            c[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return (out + out.adjoint()) / 2.0;
}

std::vector<double> default_s_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 9; ++k) g.push_back(0.50 + 0.05 * k);
    g.push_back(0.99);
    return g;
}

DefectReport popescu_check(const OperatorFamily& f, std::vector<double> grid,
                           const Tolerances& tol) {
    DefectReport rep;
    std::sort(grid.begin(), grid.end());
    rep.grid = grid;
    std::vector<bool> positive;
    for (double s : grid) {
        if (!(s > 0.0 && s < 1.0)) throw InputError("BadGrid", "s-grid must lie in (0,1)");
        const Matrix d = defect(f, s);
        const double mineig = f.dim() ? psd_min_eig(d, tol) : 0.0;
        rep.min_eigenvalues.push_back(mineig);
        positive.push_back(mineig >= -tol.psd_slack * std::max(1.0, d.norm()));
    }
    int from = -1;
    for (int k = static_cast<int>(grid.size()) - 1; k >= 0; --k) {
        if (!positive[k]) break;
        from = k;
    }
    rep.popescu_pass = from >= 0;
    if (rep.popescu_pass) rep.rho_hat = grid[from];
    return rep;
}

AbsorptionReport absorption_check(const OperatorFamily& f, double s, const Degree& cap,
                                  const Tolerances& tol) {
    if (!(s > 0.0 && s < 1.0)) throw InputError("BadGrid", "s must lie in (0,1)");
    const KGraph& g = f.graph();
    const int r = g.rank();
    AbsorptionReport rep;
    rep.s = s;
    rep.cap = cap;

    const Matrix delta = defect(f, s);
    Matrix partial = Matrix::Zero(f.dim(), f.dim());
    std::vector<int> c(r, 0);
    while (true) {
        const Degree n{std::vector<int>(c)};
        const double w = std::pow(s, 2 * n.total());
        for (const Path& lam : g.enumerate(n)) {
            const Matrix v = f.global(lam);
            partial += w * v * delta * v.adjoint();
        }
        int j = r - 1;
        while (j >= 0) {
            if (++c[j] <= cap[j]) break;
            c[j] = 0;
            --j;
        }
        if (j < 0) break;
    }

    const double s2 = s * s;
    double finite = 1.0;
    for (int j = 0; j < r; ++j) finite *= (1.0 - std::pow(s2, cap[j] + 1)) / (1.0 - s2);
    const double full = std::pow(1.0 - s2, -r);
    rep.tail_bound = operator_norm(delta, tol) * (full - finite);

    rep.partial_residual =
        f.dim() ? operator_norm(partial - Matrix::Identity(f.dim(), f.dim()), tol) : 0.0;
    rep.within_bound = rep.partial_residual <= rep.tail_bound + tol.residual;

    // truncated W_s, stacked blocks s^{|lambda|} Delta^{1/2} V_lambda*
    if (f.dim() == 0 || psd_min_eig(delta, tol) >= -tol.psd_slack * std::max(1.0, delta.norm())) {
        const Matrix root = f.dim() ? psd_sqrt(delta, tol) : delta;
        std::vector<Matrix> blocks;
        c.assign(r, 0);
        while (true) {
            const Degree n{std::vector<int>(c)};
            for (const Path& lam : g.enumerate(n))
                blocks.push_back(std::pow(s, n.total()) * root * f.global(lam).adjoint());
            int j = r - 1;
            while (j >= 0) {
                if (++c[j] <= cap[j]) break;
                c[j] = 0;
                --j;
            }
            if (j < 0) break;
        }
        Matrix w(static_cast<Eigen::Index>(blocks.size()) * f.dim(), f.dim());
        for (std::size_t k = 0; k < blocks.size(); ++k)
            w.block(static_cast<Eigen::Index>(k) * f.dim(), 0, f.dim(), f.dim()) = blocks[k];
        rep.wsw_residual =
            f.dim()
                ? operator_norm(w.adjoint() * w - Matrix::Identity(f.dim(), f.dim()), tol)
                : 0.0;
        rep.within_bound =
            rep.within_bound && rep.wsw_residual <= rep.tail_bound + tol.residual;
    }

    if (!rep.within_bound)
        throw CheckError("TailBoundExceeded",
                         "absorption residual " + std::to_string(rep.partial_residual) +
                             " exceeds tail bound " + std::to_string(rep.tail_bound));
    return rep;
}

bool is_doubly_commuting(const OperatorFamily& f, const Tolerances& tol) {
    const KGraph& g = f.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (EdgeId h = 0; h < g.edge_count(); ++h) {
            if (g.edge(e).color == g.edge(h).color) continue;
            const Path lam = g.edge_path(e), mu = g.edge_path(h);
            Matrix rhs = Matrix::Zero(f.dim(), f.dim());
            for (const auto& w : g.mce(lam, mu))
                rhs += f.global(w.alpha) * f.global(w.beta).adjoint();
            const Matrix lhs = f.global(lam).adjoint() * f.global(mu);
            if ((lhs - rhs).norm() > tol.family_eq * std::max(1.0, lhs.norm() + rhs.norm()))
                return false;
        }
    return true;
}

} // namespace hrg
