#pragma once

#include <memory>
#include <vector>

#include "hrg/kgraph.hpp"
#include "hrg/linalg.hpp"

namespace hrg {

// Lambda-contraction candidate: one Hilbert block per vertex, one matrix per
// edge mapping H_{s(e)} -> H_{r(e)}. Higher V_lambda are always derived from
// the edge data. Immutable once validated.
class OperatorFamily {
public:
    OperatorFamily(std::shared_ptr<const KGraph> g, std::vector<int> dims,
                   std::vector<Matrix> edge_blocks);

    const KGraph& graph() const { return *g_; }
    std::shared_ptr<const KGraph> graph_ptr() const { return g_; }
    int dim() const { return dim_; }
    int block_dim(VertexId a) const { return dims_[a]; }
    int block_offset(VertexId a) const { return offsets_[a]; }
    const std::vector<int>& dims() const { return dims_; }
    const Matrix& edge_block(EdgeId e) const { return edge_blocks_[e]; }
    bool is_isometry() const { return is_isometry_; }

    // dims[r(lambda)] x dims[s(lambda)] product of edge blocks in canonical order
    Matrix block(const Path& lambda) const;
    // d x d embedding of block(lambda) (vertex paths become block projectors)
    Matrix global(const Path& lambda) const;
    Matrix vertex_projector(VertexId a) const;

    // sum over Lambda^n of V_lambda V_lambda* as a global matrix
    Matrix row_sum(const Degree& n) const;

    void set_isometry_flag(bool v) { is_isometry_ = v; } // used by validate_family

private:
    std::shared_ptr<const KGraph> g_;
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int dim_ = 0;
    std::vector<Matrix> edge_blocks_;
    bool is_isometry_ = false;
};

// Checks shapes, square consistency V_f V_g = V_{g'} V_{f'}, and the per-color
// row contraction psi_j = I - sum_{lambda in Lambda^{e_j}} V V* >= 0. Sets the
// isometry flag when every psi_j vanishes.
OperatorFamily validate_family(std::shared_ptr<const KGraph> g, std::vector<int> dims,
                               std::vector<Matrix> edge_blocks, const Tolerances& tol = {});

Matrix extend_to_path(const OperatorFamily& f, const Path& lambda);

// Delta_s = sum over sigma(mu) <= (1,..,1) of (-s^2)^{|mu|} V_mu V_mu*
Matrix defect(const OperatorFamily& f, double s);

struct DefectReport {
    std::vector<double> grid;
    std::vector<double> min_eigenvalues;
    bool popescu_pass = false;
    double rho_hat = 1.0; // smallest grid point from which positivity holds through the end
};

std::vector<double> default_s_grid();

DefectReport popescu_check(const OperatorFamily& f, std::vector<double> grid = default_s_grid(),
                           const Tolerances& tol = {});

struct AbsorptionReport {
    double s = 0.0;
    Degree cap;
    double partial_residual = 0.0; // ||sum_{sigma(lambda) <= cap} s^{2|lambda|} V Delta V* - I||
    double tail_bound = 0.0;       // tau derived from ||sigma_V(n)(Delta)|| <= ||Delta|| and geometric sums
    double wsw_residual = -1.0;    // ||W_s* W_s - I|| for the truncated isometry; -1 when Delta_s is not PSD
    bool within_bound = false;
};

// Verifies the absorption identity up to the derived tail bound; throws
// TailBoundExceeded when the partial sum escapes it (that would be a bug, not
// a property of the family).
AbsorptionReport absorption_check(const OperatorFamily& f, double s, const Degree& cap,
                                  const Tolerances& tol = {});

// V_lambda* V_mu = sum_{lambda a = mu b in MCE} V_a V_b* for edges of distinct colors
bool is_doubly_commuting(const OperatorFamily& f, const Tolerances& tol = {});

} // namespace hrg
