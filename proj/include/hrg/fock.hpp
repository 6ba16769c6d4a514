#pragma once

#include <map>
#include <memory>
#include <vector>

#include "hrg/kgraph.hpp"
#include "hrg/linalg.hpp"
#include "hrg/polyspec.hpp"

namespace hrg {

// All paths with sigma(lambda) <= cap (a box), ordered degree-lexicographically
// and then by canonical form. Boxes are stable under factorize prefixes.
class FockBasis {
public:
    FockBasis(std::shared_ptr<const KGraph> g, Degree cap);

    const KGraph& graph() const { return *g_; }
    std::shared_ptr<const KGraph> graph_ptr() const { return g_; }
    const Degree& cap() const { return cap_; }
    int size() const { return static_cast<int>(paths_.size()); }
    const Path& path(int i) const { return paths_[i]; }
    const std::vector<Path>& paths() const { return paths_; }

    int index(const Path& p) const; // -1 when outside the box

private:
    std::shared_ptr<const KGraph> g_;
    Degree cap_;
    std::vector<Path> paths_;
    std::map<Path, int> index_;
};

struct SparseOperator {
    int rows = 0;
    int cols = 0;
    struct Entry {
        int row, col;
        Complex value;
    };
    std::vector<Entry> entries;

    Matrix dense() const {
        Matrix m = Matrix::Zero(rows, cols);
        for (const auto& e : entries) m(e.row, e.col) += e.value;
        return m;
    }
};

// Q_cap L_lambda Q_cap; transitions that overflow the box are dropped.
SparseOperator creation(const FockBasis& b, const Path& lambda);

// exact rectangular block of L_lambda from b_in into b_out (b_out must
// contain every lambda.mu with mu in b_in; no truncation happens then)
SparseOperator creation_rect(const FockBasis& b_in, const FockBasis& b_out, const Path& lambda);

// diagonal projection onto sigma(lambda)_j = 0 (color j is 0-based)
SparseOperator vacuum_projection(const FockBasis& b, int j);

SparseOperator gauge_unitary(const FockBasis& b, const std::vector<Complex>& z,
                             const Tolerances& tol = {});

struct TckReport {
    double max_residual = 0.0;
    // worst residual per relation of Definition 1.1
    double rel_i = 0.0, rel_ii = 0.0, rel_iii = 0.0, rel_iv = 0.0, rel_v = 0.0;
    double pj_identity = 0.0;     // P_j = I - sum L L* on the interior
    double gauge_covariance = 0.0; // U_z L U_z* vs z^sigma L at a spot-check z
};

TckReport tck_check(const FockBasis& b, const Tolerances& tol = {});

// Exact norm of p(L) restricted to the span of the box: the codomain is
// enlarged by the polynomial's output degree so nothing is truncated, making
// the value a certified lower bound for ||p(L)||, nondecreasing in the cap.
double restricted_norm(const FockBasis& b, const PolySpec& p, const Tolerances& tol = {});

// matrix of p(L) from b_in to an enlarged codomain basis (also returned)
std::pair<SparseOperator, FockBasis> poly_matrix(const FockBasis& b_in, const PolySpec& p);

} // namespace hrg
