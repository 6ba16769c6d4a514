#pragma once

#include <vector>

#include "hrg/family.hpp"

namespace hrg {

// Exact finite model of the minimal Toeplitz-Cuntz-Krieger dilation of a
// Lambda-contraction. The dilation space is spanned by symbols (lambda, xi)
// standing for W_lambda xi; their inner products are computed exactly from
// the MCE formula
//   <W_lambda xi, W_mu eta> = sum_{lambda a = mu b in MCE} <V_a* xi, V_b* eta>,
// which is what Definition 1.1(v) together with W*|_H = V* forces. Nothing
// inside level N is truncated.
class DilationSpace {
public:
    struct Symbol {
        Path lambda;
        int i; // basis index within H_{s(lambda)}
    };

    DilationSpace(const OperatorFamily& f, Degree cap, const Tolerances& tol = {});

    const OperatorFamily& family() const { return *f_; }
    const KGraph& graph() const { return f_->graph(); }
    const Degree& cap() const { return cap_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const Matrix& gram() const { return gram_; }
    int rank() const { return basis_.rank; } // dim of the level-N dilation space
    const Matrix& coords() const { return basis_.coords; }

    int symbol_index(const Path& lambda, int i) const;
    Vector symbol_coord(const Path& lambda, int i) const;

    // isometric embedding of H as the degree-0 symbols (rank x dim_H)
    Matrix embedding() const;

    const Tolerances& tolerances() const { return tol_; }

private:
    const OperatorFamily* f_;
    Degree cap_;
    Tolerances tol_;
    std::vector<Symbol> symbols_;
    std::map<std::pair<Path, int>, int> symbol_index_;
    Matrix gram_;
    GramBasis basis_;
};

DilationSpace build_dilation(const OperatorFamily& f, const Degree& cap,
                             const Tolerances& tol = {});

// W_gamma as a rectangular matrix from level-N coordinates into the
// coordinates of the level N + sigma(gamma) space (built on demand).
struct LeveledOperator {
    Matrix matrix;          // target.rank() x source.rank()
    DilationSpace target;   // the enlarged space
};

LeveledOperator dilation_operator(const DilationSpace& d, const Path& gamma);

// W_gamma* on level-N coordinates; exact (adjoints never leave the level).
Matrix dilation_adjoint(const DilationSpace& d, const Path& gamma);

// W_gamma with overflow past level N dropped; exact on the interior.
Matrix dilation_operator_truncated(const DilationSpace& d, const Path& gamma);

struct DilationReport {
    double rel_i = 0.0, rel_ii = 0.0, rel_iii = 0.0, rel_iv = 0.0, rel_v = 0.0;
    double max_residual = 0.0;
    double compression = 0.0; // || P_H W_gamma* |_H - V_gamma* || over sigma(gamma) <= N
};

// Definition 1.1 (i)-(v) on interior symbols plus the dilation property.
DilationReport verify_tck(const DilationSpace& d);

struct CuntzPimsnerReport {
    double max_residual = 0.0;
    bool applicable = false;
};

// sum over Lambda^n_a of W W* = W_a on symbols of degree <= N - n.
CuntzPimsnerReport verify_cuntz_pimsner(const DilationSpace& d);

// orthonormal (Hilbert-Schmidt) basis of {X : X V = V X, X V* = V* X}.
std::vector<Matrix> commutant(const OperatorFamily& f, const Tolerances& tol = {});

} // namespace hrg
