#include "hrg/fock.hpp"

#include <algorithm>
#include <cmath>

namespace hrg {

namespace {

// box sizes stay desk-scale; this guards restricted_norm's enlarged codomain
constexpr int kMaxBasisSize = 300000;

std::vector<Degree> degrees_up_to(const Degree& cap) {
    std::vector<Degree> out;
    std::vector<int> c(cap.rank(), 0);
    while (true) {
        out.emplace_back(c);
        int j = cap.rank() - 1;
        while (j >= 0) {
            if (++c[j] <= cap[j]) break;
            c[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const Degree& a, const Degree& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.lex_less(b);
    });
    return out;
}

} // namespace

FockBasis::FockBasis(std::shared_ptr<const KGraph> g, Degree cap) : g_(std::move(g)), cap_(std::move(cap)) {
    if (cap_.rank() != g_->rank()) throw InputError("DegreeOutOfRange", "cap rank mismatch");
    for (const Degree& n : degrees_up_to(cap_)) {
        std::vector<Path> level = g_->enumerate(n);
        for (auto& p : level) {
            index_.emplace(p, static_cast<int>(paths_.size()));
            paths_.push_back(std::move(p));
        }
        if (static_cast<int>(paths_.size()) > kMaxBasisSize)
            throw CheckError("CapTooSmall", "basis exceeds the internal size limit");
    }
}

int FockBasis::index(const Path& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

SparseOperator creation(const FockBasis& b, const Path& lambda) {
    return creation_rect(b, b, lambda);
}

SparseOperator creation_rect(const FockBasis& b_in, const FockBasis& b_out, const Path& lambda) {
    const KGraph& g = b_in.graph();
    SparseOperator op{b_out.size(), b_in.size(), {}};
    for (int c = 0; c < b_in.size(); ++c) {
        const Path& mu = b_in.path(c);
        if (g.source(lambda) != g.range(mu)) continue;
        const int r = b_out.index(g.compose(lambda, mu));
        if (r >= 0) op.entries.push_back({r, c, Complex(1, 0)});
    }
    return op;
}

SparseOperator vacuum_projection(const FockBasis& b, int j) {
    if (j < 0 || j >= b.graph().rank()) throw InputError("BadColor", "color out of range");
    SparseOperator op{b.size(), b.size(), {}};
    for (int i = 0; i < b.size(); ++i)
        if (b.path(i).degree[j] == 0) op.entries.push_back({i, i, Complex(1, 0)});
    return op;
}

SparseOperator gauge_unitary(const FockBasis& b, const std::vector<Complex>& z,
                             const Tolerances& tol) {
    const int r = b.graph().rank();
    if (static_cast<int>(z.size()) != r) throw InputError("BadGaugePoint", "need one z_j per color");
    for (const Complex& zj : z)
        if (std::abs(std::abs(zj) - 1.0) > tol.unimodular)
            throw CheckError("NotUnimodular", "|z_j| != 1");
    SparseOperator op{b.size(), b.size(), {}};
    for (int i = 0; i < b.size(); ++i) {
        Complex phase(1, 0);
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < b.path(i).degree[j]; ++k) phase *= z[j];
        op.entries.push_back({i, i, phase});
    }
    return op;
}

namespace {

// interior of a relation: columns whose images stay inside the box
std::vector<int> interior_indices(const FockBasis& b, const Degree& headroom) {
    std::vector<int> idx;
    const Degree cap = b.cap();
    for (int i = 0; i < b.size(); ++i) {
        const Degree& d = b.path(i).degree;
        bool ok = true;
        for (int j = 0; j < cap.rank(); ++j)
            if (d[j] + headroom[j] > cap[j]) ok = false;
        if (ok) idx.push_back(i);
    }
    return idx;
}

double restricted_residual(const Matrix& diff, const std::vector<int>& cols) {
    double worst = 0.0;
    for (int c : cols) worst = std::max(worst, diff.col(c).cwiseAbs().maxCoeff());
    return worst;
}

} // namespace

TckReport tck_check(const FockBasis& b, const Tolerances& tol) {
    const KGraph& g = b.graph();
    const int r = g.rank();
    TckReport rep;

    std::vector<Matrix> vert(g.vertex_count());
    for (VertexId a = 0; a < g.vertex_count(); ++a)
        vert[a] = creation(b, g.vertex_path(a)).dense();

    // (i) mutually orthogonal projections summing over the diagonal
    Matrix vsum = Matrix::Zero(b.size(), b.size());
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
        vsum += vert[a];
        for (VertexId c = 0; c < g.vertex_count(); ++c) {
            const Matrix prod = vert[a] * vert[c];
            const Matrix want = (a == c) ? vert[a] : Matrix::Zero(b.size(), b.size());
            rep.rel_i = std::max(rep.rel_i, (prod - want).cwiseAbs().maxCoeff());
        }
        rep.rel_i = std::max(rep.rel_i, (vert[a] - vert[a].adjoint()).cwiseAbs().maxCoeff());
    }
    rep.rel_i = std::max(rep.rel_i,
                         (vsum - Matrix::Identity(b.size(), b.size())).cwiseAbs().maxCoeff());

    std::vector<Path> gens;
    for (VertexId a = 0; a < g.vertex_count(); ++a) gens.push_back(g.vertex_path(a));
    for (EdgeId e = 0; e < g.edge_count(); ++e) gens.push_back(g.edge_path(e));
    auto mat = [&](const Path& p) { return creation(b, p).dense(); };

    // (ii) multiplicativity along composition
    for (const Path& lam : gens)
        for (const Path& mu : gens) {
            if (g.source(lam) != g.range(mu)) continue;
            const Path comp = g.compose(lam, mu);
            const Matrix diff = mat(lam) * mat(mu) - mat(comp);
            rep.rel_ii = std::max(
                rep.rel_ii, restricted_residual(diff, interior_indices(b, comp.degree)));
        }

    // (iii) L* L = L_{s(lambda)}
    for (const Path& lam : gens) {
        const Matrix diff = mat(lam).adjoint() * mat(lam) - vert[g.source(lam)];
        rep.rel_iii =
            std::max(rep.rel_iii, restricted_residual(diff, interior_indices(b, lam.degree)));
    }

    // (iv) row dominance per color: L_a - sum over Lambda^{e_j}_a is PSD on the interior
    for (int j = 0; j < r; ++j) {
        const auto idx = interior_indices(b, Degree::unit(r, j));
        for (VertexId a = 0; a < g.vertex_count(); ++a) {
            Matrix x = vert[a];
            for (const Path& lam : g.enumerate(Degree::unit(r, j), a)) {
                const Matrix m = mat(lam);
                x -= m * m.adjoint();
            }
            Matrix xi(idx.size(), idx.size());
            for (std::size_t p = 0; p < idx.size(); ++p)
                for (std::size_t q = 0; q < idx.size(); ++q) xi(p, q) = x(idx[p], idx[q]);
            if (xi.rows() > 0)
                rep.rel_iv = std::max(rep.rel_iv, std::max(0.0, -psd_min_eig(xi, tol)));
        }
    }

    // (v) adjoint relation through minimal common extensions
    for (const Path& mu : gens)
        for (const Path& nu : gens) {
            Matrix rhs = Matrix::Zero(b.size(), b.size());
            for (const auto& w : g.mce(mu, nu)) rhs += mat(w.alpha) * mat(w.beta).adjoint();
            const Matrix diff = mat(mu).adjoint() * mat(nu) - rhs;
            rep.rel_v =
                std::max(rep.rel_v, restricted_residual(diff, interior_indices(b, nu.degree)));
        }

    // P_j identity on the interior
    for (int j = 0; j < r; ++j) {
        Matrix pj = vacuum_projection(b, j).dense();
        Matrix formula = Matrix::Identity(b.size(), b.size());
        for (const Path& lam : g.enumerate(Degree::unit(r, j))) {
            const Matrix m = mat(lam);
            formula -= m * m.adjoint();
        }
        rep.pj_identity = std::max(
            rep.pj_identity,
            restricted_residual(pj - formula, interior_indices(b, Degree::unit(r, j))));
    }

    // gauge covariance at an exactly representable point of T^r
    std::vector<Complex> z(r);
    for (int j = 0; j < r; ++j) z[j] = (j % 2 == 0) ? Complex(0, 1) : Complex(-1, 0);
    const Matrix uz = gauge_unitary(b, z, tol).dense();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Path lam = g.edge_path(e);
        const SparseOperator cre = creation(b, lam);
        const Matrix conj = uz * cre.dense() * uz.adjoint();
        const Complex phase = z[g.edge(e).color];
        double worst = 0.0;
        for (const auto& en : cre.entries) // compare on non-overflow entries only
            worst = std::max(worst, std::abs(conj(en.row, en.col) - phase * en.value));
        rep.gauge_covariance = std::max(rep.gauge_covariance, worst);
    }

    rep.max_residual = std::max({rep.rel_i, rep.rel_ii, rep.rel_iii, rep.rel_iv, rep.rel_v});
    return rep;
}

std::pair<SparseOperator, FockBasis> poly_matrix(const FockBasis& b_in, const PolySpec& p) {
    const KGraph& g = b_in.graph();
    FockBasis b_out(b_in.graph_ptr(), b_in.cap() + p.max_mu_degree(g.rank()));
    SparseOperator op{b_out.size(), b_in.size(), {}};
    for (int c = 0; c < b_in.size(); ++c) {
        const Path& gamma = b_in.path(c);
        if (p.unit != Complex(0, 0)) op.entries.push_back({b_out.index(gamma), c, p.unit});
        for (const auto& t : p.terms) {
            if (!(t.nu.degree <= gamma.degree)) continue;
            auto [head, rest] = g.factorize(gamma, t.nu.degree);
            if (!(head == t.nu)) continue;
            if (g.source(t.mu) != g.range(rest)) continue;
            const int row = b_out.index(g.compose(t.mu, rest));
            op.entries.push_back({row, c, t.coeff}); // row >= 0: codomain is enlarged
        }
    }
    return {std::move(op), std::move(b_out)};
}

double restricted_norm(const FockBasis& b, const PolySpec& p, const Tolerances& tol) {
    auto [op, b_out] = poly_matrix(b, p);
    return operator_norm(op.dense(), tol);
}

} // namespace hrg
