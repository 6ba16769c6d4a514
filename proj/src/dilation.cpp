#include "hrg/dilation.hpp"

#include <algorithm>

namespace hrg {

namespace {

std::vector<Degree> degrees_through(const Degree& cap) {
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

DilationSpace::DilationSpace(const OperatorFamily& f, Degree cap, const Tolerances& tol)
    : f_(&f), cap_(std::move(cap)), tol_(tol) {
    const KGraph& g = f.graph();
    if (cap_.rank() != g.rank()) throw InputError("DegreeOutOfRange", "cap rank mismatch");

    std::vector<Path> paths;
    for (const Degree& n : degrees_through(cap_))
        for (const Path& p : g.enumerate(n)) paths.push_back(p);
    for (const Path& p : paths) {
        const int db = f.block_dim(g.source(p));
        for (int i = 0; i < db; ++i) {
            symbol_index_.emplace(std::make_pair(p, i), static_cast<int>(symbols_.size()));
            symbols_.push_back({p, i});
        }
    }

    const int n = static_cast<int>(symbols_.size());
    gram_ = Matrix::Zero(n, n);

    // group symbols by path so each MCE sum is computed once per path pair
    std::vector<std::pair<int, int>> span; // [first symbol, count] per path
    {
        int pos = 0;
        for (const Path& p : paths) {
            const int db = f.block_dim(g.source(p));
            span.push_back({pos, db});
            pos += db;
        }
    }
    for (std::size_t a = 0; a < paths.size(); ++a) {
        for (std::size_t b = a; b < paths.size(); ++b) {
            if (span[a].second == 0 || span[b].second == 0) continue;
            Matrix pairwise = Matrix::Zero(f.dim(), f.dim());
            for (const auto& w : g.mce(paths[a], paths[b]))
                pairwise += f.global(w.alpha) * f.global(w.beta).adjoint();
            const int oa = f.block_offset(g.source(paths[a]));
            const int ob = f.block_offset(g.source(paths[b]));
            for (int i = 0; i < span[a].second; ++i)
                for (int j = 0; j < span[b].second; ++j) {
                    const Complex v = pairwise(oa + i, ob + j);
                    gram_(span[a].first + i, span[b].first + j) = v;
                    gram_(span[b].first + j, span[a].first + i) = std::conj(v);
                }
        }
    }

    try {
        basis_ = gram_orthonormalize(gram_, tol_);
    } catch (const CheckError& e) {
        throw CheckError("GramNotPSD", std::string("dilation Gram is not PSD: ") + e.what());
    }
}

int DilationSpace::symbol_index(const Path& lambda, int i) const {
    auto it = symbol_index_.find({lambda, i});
    return it == symbol_index_.end() ? -1 : it->second;
}

Vector DilationSpace::symbol_coord(const Path& lambda, int i) const {
    const int k = symbol_index(lambda, i);
    if (k < 0) throw InputError("DegreeOutOfRange", "symbol outside the level cap");
    return basis_.coords.col(k);
}

Matrix DilationSpace::embedding() const {
    const KGraph& g = f_->graph();
    Matrix e(rank(), f_->dim());
    for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (int i = 0; i < f_->block_dim(a); ++i)
            e.col(f_->block_offset(a) + i) = symbol_coord(g.vertex_path(a), i);
    return e;
}

DilationSpace build_dilation(const OperatorFamily& f, const Degree& cap, const Tolerances& tol) {
    return DilationSpace(f, cap, tol);
}

namespace {

// least-squares lift of a symbol-level assignment to coordinates
Matrix map_from_symbols(const DilationSpace& src, const Matrix& targets) {
    return least_squares_map(src.coords(), targets, src.tolerances());
}

} // namespace

LeveledOperator dilation_operator(const DilationSpace& d, const Path& gamma) {
    DilationSpace target(d.family(), d.cap() + gamma.degree, d.tolerances());
    const KGraph& g = d.graph();
    Matrix b = Matrix::Zero(target.rank(), static_cast<int>(d.symbols().size()));
    for (std::size_t k = 0; k < d.symbols().size(); ++k) {
        const auto& sym = d.symbols()[k];
        if (g.source(gamma) != g.range(sym.lambda)) continue;
        b.col(k) = target.symbol_coord(g.compose(gamma, sym.lambda), sym.i);
    }
    return {map_from_symbols(d, b), std::move(target)};
}

Matrix dilation_operator_truncated(const DilationSpace& d, const Path& gamma) {
    const KGraph& g = d.graph();
    Matrix b = Matrix::Zero(d.rank(), static_cast<int>(d.symbols().size()));
    for (std::size_t k = 0; k < d.symbols().size(); ++k) {
        const auto& sym = d.symbols()[k];
        if (g.source(gamma) != g.range(sym.lambda)) continue;
        const Path moved = g.compose(gamma, sym.lambda);
        const int idx = d.symbol_index(moved, sym.i);
        if (idx >= 0) b.col(k) = d.coords().col(idx);
    }
    return map_from_symbols(d, b);
}

Matrix dilation_adjoint(const DilationSpace& d, const Path& gamma) {
    const KGraph& g = d.graph();
    const OperatorFamily& f = d.family();
    Matrix b = Matrix::Zero(d.rank(), static_cast<int>(d.symbols().size()));
    for (std::size_t k = 0; k < d.symbols().size(); ++k) {
        const auto& sym = d.symbols()[k];
        // W_gamma*(W_lambda xi) = sum over gamma.alpha = lambda.beta in MCE of
        // W_alpha V_beta* xi; every alpha stays within the level cap
        for (const auto& w : g.mce(gamma, sym.lambda)) {
            const Matrix vb = f.block(w.beta).adjoint(); // H_{s(lambda)} -> H_{s(alpha)}
            for (int j = 0; j < vb.rows(); ++j) {
                if (vb(j, sym.i) == Complex(0, 0)) continue;
                b.col(k) += vb(j, sym.i) * d.symbol_coord(w.alpha, j);
            }
        }
    }
    return map_from_symbols(d, b);
}

namespace {

// orthonormal basis of the span of the interior symbols, as coordinates
Matrix interior_basis(const DilationSpace& d, const Degree& headroom) {
    std::vector<int> idx;
    for (std::size_t k = 0; k < d.symbols().size(); ++k) {
        const Degree& deg = d.symbols()[k].lambda.degree;
        bool ok = true;
        for (int j = 0; j < d.cap().rank(); ++j)
            if (deg[j] + headroom[j] > d.cap()[j]) ok = false;
        if (ok) idx.push_back(static_cast<int>(k));
    }
    Matrix cols(d.rank(), static_cast<int>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) cols.col(k) = d.coords().col(idx[k]);
    if (cols.cols() == 0) return cols;
    GramBasis gb = gram_orthonormalize(cols.adjoint() * cols, d.tolerances());
    // columns of cols * pinv-style combination: use thin decomposition instead
    Eigen::HouseholderQR<Matrix> qr(cols);
    Matrix q = qr.householderQ() * Matrix::Identity(cols.rows(), std::min(cols.rows(), cols.cols()));
    // drop directions that are numerically absent from the span
    Matrix r = qr.matrixQR().topRows(std::min(cols.rows(), cols.cols()));
    std::vector<int> keep;
    for (Eigen::Index j = 0; j < r.rows(); ++j)
        if (r.row(j).cwiseAbs().maxCoeff() > 1e-10) keep.push_back(static_cast<int>(j));
    Matrix out(d.rank(), static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) out.col(j) = q.col(keep[j]);
    return out;
}

double column_residual(const Matrix& diff, const Matrix& interior_cols) {
    if (interior_cols.cols() == 0) return 0.0;
    return operator_norm(diff * interior_cols);
}

// interior symbols as raw coordinate columns (unit vectors)
Matrix interior_columns(const DilationSpace& d, const Degree& headroom) {
    std::vector<int> idx;
    for (std::size_t k = 0; k < d.symbols().size(); ++k) {
        const Degree& deg = d.symbols()[k].lambda.degree;
        bool ok = true;
        for (int j = 0; j < d.cap().rank(); ++j)
            if (deg[j] + headroom[j] > d.cap()[j]) ok = false;
        if (ok) idx.push_back(static_cast<int>(k));
    }
    Matrix cols(d.rank(), static_cast<int>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) cols.col(k) = d.coords().col(idx[k]);
    return cols;
}

} // namespace

DilationReport verify_tck(const DilationSpace& d) {
    const KGraph& g = d.graph();
    const OperatorFamily& f = d.family();
    const Tolerances& tol = d.tolerances();
    DilationReport rep;
    const int rk = d.rank();

    std::vector<Matrix> vert(g.vertex_count());
    for (VertexId a = 0; a < g.vertex_count(); ++a)
        vert[a] = dilation_operator_truncated(d, g.vertex_path(a));

    Matrix vsum = Matrix::Zero(rk, rk);
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
        vsum += vert[a];
        rep.rel_i = std::max(rep.rel_i, operator_norm(vert[a] - vert[a].adjoint(), tol));
        rep.rel_i = std::max(rep.rel_i, operator_norm(vert[a] * vert[a] - vert[a], tol));
        for (VertexId c = 0; c < g.vertex_count(); ++c)
            if (a != c) rep.rel_i = std::max(rep.rel_i, operator_norm(vert[a] * vert[c], tol));
    }
    rep.rel_i = std::max(rep.rel_i, operator_norm(vsum - Matrix::Identity(rk, rk), tol));

    std::vector<Path> gens;
    for (VertexId a = 0; a < g.vertex_count(); ++a) gens.push_back(g.vertex_path(a));
    for (EdgeId e = 0; e < g.edge_count(); ++e) gens.push_back(g.edge_path(e));

    std::map<Path, Matrix> wsq, wadj;
    auto w_of = [&](const Path& p) -> const Matrix& {
        auto it = wsq.find(p);
        if (it == wsq.end()) it = wsq.emplace(p, dilation_operator_truncated(d, p)).first;
        return it->second;
    };
    auto adj_of = [&](const Path& p) -> const Matrix& {
        auto it = wadj.find(p);
        if (it == wadj.end()) it = wadj.emplace(p, dilation_adjoint(d, p)).first;
        return it->second;
    };

    // (ii)
    for (const Path& lam : gens)
        for (const Path& mu : gens) {
            if (g.source(lam) != g.range(mu)) continue;
            const Path comp = g.compose(lam, mu);
            rep.rel_ii = std::max(rep.rel_ii,
                                  column_residual(w_of(lam) * w_of(mu) - w_of(comp),
                                                  interior_columns(d, comp.degree)));
        }

    // (iii)
    for (const Path& lam : gens)
        rep.rel_iii = std::max(
            rep.rel_iii, column_residual(adj_of(lam) * w_of(lam) - w_of(g.vertex_path(g.source(lam))),
                                         interior_columns(d, lam.degree)));

    // (iv): compression to the interior subspace must stay PSD
    for (int j = 0; j < g.rank(); ++j) {
        const Matrix q = interior_basis(d, Degree::unit(g.rank(), j));
        if (q.cols() == 0) continue;
        for (VertexId a = 0; a < g.vertex_count(); ++a) {
            Matrix x = vert[a];
            for (const Path& lam : g.enumerate(Degree::unit(g.rank(), j), a))
                x -= w_of(lam) * adj_of(lam);
            const Matrix compressed = q.adjoint() * ((x + x.adjoint()) / 2.0) * q;
            rep.rel_iv = std::max(rep.rel_iv, std::max(0.0, -psd_min_eig(compressed, tol)));
        }
    }

    // (v)
    for (const Path& mu : gens)
        for (const Path& nu : gens) {
            Matrix rhs = Matrix::Zero(rk, rk);
            for (const auto& w : g.mce(mu, nu)) rhs += w_of(w.alpha) * adj_of(w.beta);
            rep.rel_v = std::max(rep.rel_v,
                                 column_residual(adj_of(mu) * w_of(nu) - rhs,
                                                 interior_columns(d, nu.degree)));
        }

    // dilation property: P_H W_gamma* P_H equals V_gamma* on the embedded H
    const Matrix emb = d.embedding();
    for (const Degree& n : degrees_through(d.cap()))
        for (const Path& gam : g.enumerate(n)) {
            const Matrix lhs = emb.adjoint() * dilation_adjoint(d, gam) * emb;
            rep.compression =
                std::max(rep.compression, operator_norm(lhs - f.global(gam).adjoint(), tol));
        }

    rep.max_residual = std::max({rep.rel_i, rep.rel_ii, rep.rel_iii, rep.rel_iv, rep.rel_v});
    return rep;
}

CuntzPimsnerReport verify_cuntz_pimsner(const DilationSpace& d) {
    const KGraph& g = d.graph();
    const Tolerances& tol = d.tolerances();
    CuntzPimsnerReport rep;
    rep.applicable = d.family().is_isometry();
    for (const Degree& n : degrees_through(d.cap())) {
        if (n.is_zero()) continue;
        const Matrix cols = interior_columns(d, n);
        if (cols.cols() == 0) continue;
        for (VertexId a = 0; a < g.vertex_count(); ++a) {
            Matrix x = dilation_operator_truncated(d, g.vertex_path(a));
            for (const Path& lam : g.enumerate(n, a))
                x -= dilation_operator_truncated(d, lam) * dilation_adjoint(d, lam);
            rep.max_residual = std::max(rep.max_residual, column_residual(x, cols));
        }
    }
    return rep;
}

std::vector<Matrix> commutant(const OperatorFamily& f, const Tolerances& tol) {
    const KGraph& g = f.graph();
    const int dd = f.dim();
    std::vector<Matrix> gens;
    for (VertexId a = 0; a < g.vertex_count(); ++a) gens.push_back(f.vertex_projector(a));
    for (EdgeId e = 0; e < g.edge_count(); ++e) gens.push_back(f.global(g.edge_path(e)));

    Matrix stacked(2 * static_cast<int>(gens.size()) * dd * dd, dd * dd);
    Eigen::Index row = 0;
    const Matrix id = Matrix::Identity(dd, dd);
    for (const Matrix& v : gens) {
        stacked.middleRows(row, dd * dd) = kron(id, v) - kron(v.transpose(), id);
        row += dd * dd;
        const Matrix va = v.adjoint();
        stacked.middleRows(row, dd * dd) = kron(id, va) - kron(va.transpose(), id);
        row += dd * dd;
    }
    const Matrix basis = kernel_basis(stacked, tol);
    std::vector<Matrix> out;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(unvec(basis.col(k), dd, dd));
    return out;
}

} // namespace hrg
