#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrg/degree.hpp"
#include "hrg/errors.hpp"

namespace hrg {

using VertexId = int;
using EdgeId = int;

struct Edge {
    std::string name;
    int color = 0; // 0-based internally; 1-based in files
    VertexId source = 0;
    VertexId range = 0;
};

// Morphism in canonical color-block form. Edges are listed in composition
// order, leftmost applied last: lambda = e0 . e1 ... with s(e_i) = r(e_{i+1}).
// Canonical form sorts colors non-decreasing left to right, so the color-1
// block is leftmost. Degree-0 paths carry only their base vertex.
struct Path {
    Degree degree;
    VertexId base = 0; // meaningful only when degree is zero
    std::vector<EdgeId> edges;

    bool operator==(const Path& o) const {
        return degree == o.degree && edges == o.edges &&
               (degree.is_zero() ? base == o.base : true);
    }
    bool operator<(const Path& o) const {
        if (degree != o.degree) return degree.lex_less(o.degree);
        if (edges != o.edges) return edges < o.edges;
        return degree.is_zero() && base < o.base;
    }
};

struct MceWitness {
    Path nu;    // the common extension, degree sigma(lambda) v sigma(mu)
    Path alpha; // nu = lambda . alpha
    Path beta;  // nu = mu . beta
};

// Raw graph data as read from a file, prior to validation.
struct GraphSpec {
    int rank = 0;
    std::vector<std::string> vertices;
    std::vector<Edge> edges; // endpoints resolved to vertex ids
    // square fg = g'f' stored as ((f,g),(g',f')) with color(f) < color(g)
    std::vector<std::pair<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>>> squares;
    std::vector<std::string> edge_names; // parallel to edges (convenience)
};

// Validated finite rank-r graph. Immutable after construction; all queries
// are pure, so concurrent use needs no synchronization.
class KGraph {
public:
    // Runs the full validation: square bijectivity, endpoint compatibility,
    // and the cube condition for rank >= 3. Throws CheckError on failure.
    explicit KGraph(GraphSpec spec);

    int rank() const { return rank_; }
    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int square_count() const { return static_cast<int>(squares_fwd_.size()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    std::vector<EdgeId> edges_of_color(int color) const;

    // Path endpoints. r(lambda) is where the path ends up, s(lambda) where it starts.
    VertexId range(const Path& p) const;
    VertexId source(const Path& p) const;

    Path vertex_path(VertexId v) const;
    Path edge_path(EdgeId e) const;

    // Category composition: lambda . mu, defined when s(lambda) = r(mu).
    Path compose(const Path& lambda, const Path& mu) const;

    // Unique (mu, nu) with sigma(mu) = m and lambda = mu . nu.
    std::pair<Path, Path> factorize(const Path& lambda, const Degree& m) const;

    // Lambda^n, optionally filtered by range and/or source vertex.
    std::vector<Path> enumerate(const Degree& n,
                                std::optional<VertexId> range_filter = std::nullopt,
                                std::optional<VertexId> source_filter = std::nullopt) const;

    // Minimal common extensions with both witnesses, sorted by nu.
    std::vector<MceWitness> mce(const Path& lambda, const Path& mu) const;

    // Canonical form of an arbitrary composable edge word (leftmost-first swaps).
    Path path_from_edges(const std::vector<EdgeId>& word) const;

    // every vertex receives a path of nonzero shape
    bool is_cofinal() const;

    // "v" for vertices, "v:e1.e2" with v = r(lambda) otherwise
    std::string path_str(const Path& p) const;
    Path parse_path(const std::string& s) const;

    Degree word_degree(const std::vector<EdgeId>& word) const;

private:
    void validate_squares() const;
    void validate_cubes() const;
    void check_word(const std::vector<EdgeId>& word) const;
    std::vector<EdgeId> normalize(std::vector<EdgeId> word, bool leftmost_first) const;
    // pull the leftmost color-c edge to the front; returns (edge, remainder)
    std::pair<EdgeId, std::vector<EdgeId>> split_first(std::vector<EdgeId> word, int color) const;
    void color_chains(int color, int length, VertexId range_at,
                      std::vector<EdgeId>& acc, std::vector<std::vector<EdgeId>>& out) const;

    int rank_ = 0;
    std::vector<std::string> vertex_names_;
    std::map<std::string, VertexId> vertex_index_;
    std::vector<Edge> edges_;
    std::map<std::string, EdgeId> edge_index_;
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> squares_fwd_;
    std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> squares_bwd_;
};

} // namespace hrg
