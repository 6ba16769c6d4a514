#include "hrg/kgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hrg {

KGraph::KGraph(GraphSpec spec) : rank_(spec.rank) {
    if (rank_ < 1) throw InputError("BadRank", "rank must be a positive integer");
    vertex_names_ = spec.vertices;
    for (VertexId v = 0; v < static_cast<int>(vertex_names_.size()); ++v) {
        if (!vertex_index_.emplace(vertex_names_[v], v).second)
            throw InputError("DuplicateName", "duplicate vertex '" + vertex_names_[v] + "'");
    }
    if (vertex_names_.empty()) throw InputError("EmptyGraph", "graph needs at least one vertex");

    edges_ = spec.edges;
    for (EdgeId e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Edge& ed = edges_[e];
        if (ed.color < 0 || ed.color >= rank_)
            throw InputError("BadColor", "edge '" + ed.name + "' has color out of 1.." + std::to_string(rank_));
        if (ed.source < 0 || ed.source >= vertex_count() || ed.range < 0 || ed.range >= vertex_count())
            throw InputError("BadEndpoint", "edge '" + ed.name + "' references undeclared vertex");
        if (!edge_index_.emplace(ed.name, e).second)
            throw InputError("DuplicateName", "duplicate edge '" + ed.name + "'");
    }

    for (const auto& [key, val] : spec.squares) {
        auto [f, g] = key;
        auto [gp, fp] = val;
        auto bad = [&](const std::string& msg) {
            throw CheckError("EndpointMismatch",
                             "square (" + edges_[f].name + "," + edges_[g].name + ") -> (" +
                                 edges_[gp].name + "," + edges_[fp].name + "): " + msg);
        };
        if (edges_[f].color >= edges_[g].color) bad("left word must be ascending in color");
        if (edges_[gp].color != edges_[g].color || edges_[fp].color != edges_[f].color)
            bad("colors of the factorization do not match");
        if (edges_[f].source != edges_[g].range) bad("left word fg not composable");
        if (edges_[gp].source != edges_[fp].range) bad("right word g'f' not composable");
        if (edges_[gp].range != edges_[f].range) bad("r(g') != r(f)");
        if (edges_[fp].source != edges_[g].source) bad("s(f') != s(g)");
        if (!squares_fwd_.emplace(key, val).second)
            throw CheckError("DuplicateSquare",
                             "two squares declared for word " + edges_[f].name + edges_[g].name);
        if (!squares_bwd_.emplace(val, key).second)
            throw CheckError("DuplicateSquare",
                             "two squares share the factorization " + edges_[gp].name + edges_[fp].name);
    }

    validate_squares();
    if (rank_ >= 3) validate_cubes();
}

void KGraph::validate_squares() const {
    // every ascending composable bi-colored pair needs exactly one square,
    // and the factorizations must exhaust the descending pairs (bijection)
    std::size_t descending = 0;
    for (EdgeId f = 0; f < edge_count(); ++f) {
        for (EdgeId g = 0; g < edge_count(); ++g) {
            if (edges_[f].source != edges_[g].range) continue;
            if (edges_[f].color < edges_[g].color) {
                if (!squares_fwd_.count({f, g}))
                    throw CheckError("MissingSquare",
                                     "no square for word " + edges_[f].name + "." + edges_[g].name);
            } else if (edges_[f].color > edges_[g].color) {
                ++descending;
            }
        }
    }
    if (squares_bwd_.size() != descending)
        throw CheckError("MissingSquare",
                         "square map is not onto the descending words: " +
                             std::to_string(squares_bwd_.size()) + " factorizations for " +
                             std::to_string(descending) + " words");
}

void KGraph::validate_cubes() const {
    // tri-colored composable words must normalize independently of swap order
    for (EdgeId x = 0; x < edge_count(); ++x)
        for (EdgeId y = 0; y < edge_count(); ++y) {
            if (edges_[x].source != edges_[y].range) continue;
            if (edges_[x].color == edges_[y].color) continue;
            for (EdgeId z = 0; z < edge_count(); ++z) {
                if (edges_[y].source != edges_[z].range) continue;
                if (edges_[z].color == edges_[x].color || edges_[z].color == edges_[y].color) continue;
                std::vector<EdgeId> w{x, y, z};
                if (normalize(w, true) != normalize(w, false)) {
                    throw CheckError("CubeViolation",
                                     "swap order changes the normal form of " + edges_[x].name + "." +
                                         edges_[y].name + "." + edges_[z].name);
                }
            }
        }
}

void KGraph::check_word(const std::vector<EdgeId>& word) const {
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (edges_[word[i]].source != edges_[word[i + 1]].range)
            throw CheckError("NotComposable", "edge word is not composable at position " +
                                                  std::to_string(i));
}

std::vector<EdgeId> KGraph::normalize(std::vector<EdgeId> word, bool leftmost_first) const {
    // bubble sort by color; each out-of-order pair is a descending word g'f'
    // and gets replaced through the inverse square bijection
    bool moved = true;
    while (moved) {
        moved = false;
        const int n = static_cast<int>(word.size());
        for (int k = 0; k + 1 < n; ++k) {
            const int p = leftmost_first ? k : n - 2 - k;
            if (edges_[word[p]].color > edges_[word[p + 1]].color) {
                auto it = squares_bwd_.find({word[p], word[p + 1]});
                if (it == squares_bwd_.end())
                    throw CheckError("MissingSquare", "no factorization for descending word " +
                                                          edges_[word[p]].name + "." +
                                                          edges_[word[p + 1]].name);
                word[p] = it->second.first;
                word[p + 1] = it->second.second;
                moved = true;
            }
        }
    }
    return word;
}

std::optional<VertexId> KGraph::find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> KGraph::find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<EdgeId> KGraph::edges_of_color(int color) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_count(); ++e)
        if (edges_[e].color == color) out.push_back(e);
    return out;
}

VertexId KGraph::range(const Path& p) const {
    return p.edges.empty() ? p.base : edges_[p.edges.front()].range;
}

VertexId KGraph::source(const Path& p) const {
    return p.edges.empty() ? p.base : edges_[p.edges.back()].source;
}

Path KGraph::vertex_path(VertexId v) const {
    if (v < 0 || v >= vertex_count()) throw InputError("BadEndpoint", "no such vertex");
    return Path{Degree::zero(rank_), v, {}};
}

Path KGraph::edge_path(EdgeId e) const {
    if (e < 0 || e >= edge_count()) throw InputError("BadEndpoint", "no such edge");
    return Path{Degree::unit(rank_, edges_[e].color), 0, {e}};
}

Degree KGraph::word_degree(const std::vector<EdgeId>& word) const {
    Degree d = Degree::zero(rank_);
    for (EdgeId e : word) d = d + Degree::unit(rank_, edges_[e].color);
    return d;
}

Path KGraph::path_from_edges(const std::vector<EdgeId>& word) const {
    if (word.empty()) throw InputError("EmptyWord", "degree-0 path needs a base vertex");
    check_word(word);
    std::vector<EdgeId> canon = normalize(word, true);
    return Path{word_degree(canon), 0, std::move(canon)};
}

Path KGraph::compose(const Path& lambda, const Path& mu) const {
    if (source(lambda) != range(mu))
        throw CheckError("NotComposable", "s(" + path_str(lambda) + ") != r(" + path_str(mu) + ")");
    if (lambda.edges.empty()) return mu;
    if (mu.edges.empty()) return lambda;
    std::vector<EdgeId> word = lambda.edges;
    word.insert(word.end(), mu.edges.begin(), mu.edges.end());
    return path_from_edges(word);
}

std::pair<EdgeId, std::vector<EdgeId>> KGraph::split_first(std::vector<EdgeId> word,
                                                           int color) const {
    // applying forward squares to an ascending pair x.y (color(x) < color(y) = c)
    // moves the color-c edge one slot to the left
    int pos = -1;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (edges_[word[i]].color == color) {
            pos = static_cast<int>(i);
            break;
        }
    if (pos < 0) throw CheckError("DegreeOutOfRange", "no edge of requested color in word");
    while (pos > 0) {
        auto it = squares_fwd_.find({word[pos - 1], word[pos]});
        if (it == squares_fwd_.end())
            throw CheckError("MissingSquare", "no square for word " + edges_[word[pos - 1]].name +
                                                  "." + edges_[word[pos]].name);
        word[pos - 1] = it->second.first;
        word[pos] = it->second.second;
        --pos;
    }
    EdgeId head = word.front();
    word.erase(word.begin());
    return {head, std::move(word)};
}

std::pair<Path, Path> KGraph::factorize(const Path& lambda, const Degree& m) const {
    if (m.rank() != rank_ || !(m <= lambda.degree) || !(Degree::zero(rank_) <= m))
        throw CheckError("DegreeOutOfRange",
                         "factorize: need 0 <= " + m.str() + " <= " + lambda.degree.str());
    std::vector<EdgeId> prefix;
    std::vector<EdgeId> rest = lambda.edges;
    for (int c = 0; c < rank_; ++c)
        for (int t = 0; t < m[c]; ++t) {
            auto [e, rem] = split_first(std::move(rest), c);
            prefix.push_back(e);
            rest = std::move(rem);
        }
    Path mu = prefix.empty() ? vertex_path(range(lambda))
                             : Path{m, 0, prefix}; // prefix is canonical by construction
    Path nu = rest.empty() ? vertex_path(source(lambda)) : path_from_edges(rest);
    return {mu, nu};
}

void KGraph::color_chains(int color, int length, VertexId range_at, std::vector<EdgeId>& acc,
                          std::vector<std::vector<EdgeId>>& out) const {
    if (length == 0) {
        out.push_back(acc);
        return;
    }
    VertexId at = acc.empty() ? range_at : edges_[acc.back()].source;
    for (EdgeId e = 0; e < edge_count(); ++e) {
        if (edges_[e].color != color || edges_[e].range != at) continue;
        acc.push_back(e);
        color_chains(color, length - 1, range_at, acc, out);
        acc.pop_back();
    }
}

std::vector<Path> KGraph::enumerate(const Degree& n, std::optional<VertexId> range_filter,
                                    std::optional<VertexId> source_filter) const {
    if (n.rank() != rank_) throw InputError("DegreeOutOfRange", "degree rank mismatch");
    // canonical words are exactly the composable concatenations of one
    // color-c chain of length n_c per color, ascending in c
    struct Partial {
        std::vector<EdgeId> word;
        VertexId src;
    };
    std::vector<Partial> partials;
    if (range_filter) {
        partials.push_back({{}, *range_filter});
    } else {
        for (VertexId v = 0; v < vertex_count(); ++v) partials.push_back({{}, v});
    }
    for (int c = 0; c < rank_; ++c) {
        if (n[c] == 0) continue;
        std::vector<Partial> next;
        for (const auto& p : partials) {
            std::vector<std::vector<EdgeId>> chains;
            std::vector<EdgeId> acc;
            color_chains(c, n[c], p.src, acc, chains);
            for (auto& ch : chains) {
                Partial q = p;
                q.src = edges_[ch.back()].source;
                q.word.insert(q.word.end(), ch.begin(), ch.end());
                next.push_back(std::move(q));
            }
        }
        partials = std::move(next);
    }
    std::vector<Path> out;
    for (auto& p : partials) {
        if (source_filter && p.src != *source_filter) continue;
        if (p.word.empty())
            out.push_back(vertex_path(p.src));
        else
            out.push_back(Path{n, 0, std::move(p.word)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MceWitness> KGraph::mce(const Path& lambda, const Path& mu) const {
    const Degree target = lambda.degree.join(mu.degree);
    std::vector<MceWitness> out;
    for (const Path& alpha : enumerate(target - lambda.degree, source(lambda))) {
        Path nu = compose(lambda, alpha);
        auto [head, beta] = factorize(nu, mu.degree);
        if (head == mu) out.push_back({std::move(nu), alpha, std::move(beta)});
    }
    std::sort(out.begin(), out.end(),
              [](const MceWitness& a, const MceWitness& b) { return a.nu < b.nu; });
    return out;
}

bool KGraph::is_cofinal() const {
    std::vector<bool> receives(vertex_count(), false);
    for (const Edge& e : edges_) receives[e.range] = true;
    return std::all_of(receives.begin(), receives.end(), [](bool b) { return b; });
}

std::string KGraph::path_str(const Path& p) const {
    if (p.edges.empty()) return vertex_names_[p.base];
    std::string s = vertex_names_[range(p)] + ":";
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) s += ".";
        s += edges_[p.edges[i]].name;
    }
    return s;
}

Path KGraph::parse_path(const std::string& s) const {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
        auto v = find_vertex(s);
        if (!v) throw InputError("BadPath", "unknown vertex '" + s + "'");
        return vertex_path(*v);
    }
    const std::string vname = s.substr(0, colon);
    auto v = find_vertex(vname);
    if (!v) throw InputError("BadPath", "unknown vertex '" + vname + "'");
    std::vector<EdgeId> word;
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        auto e = find_edge(tok);
        if (!e) throw InputError("BadPath", "unknown edge '" + tok + "'");
        word.push_back(*e);
    }
    if (word.empty()) throw InputError("BadPath", "empty edge list in '" + s + "'");
    Path p = path_from_edges(word);
    if (range(p) != *v)
        throw InputError("BadPath", "declared range '" + vname + "' does not match edge list");
    return p;
}

} // namespace hrg
