#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hrg/errors.hpp"

namespace hrg {

// Shape vector n in N_0^r, ordered componentwise. Subtraction is partial.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::vector<int> comps) : c_(std::move(comps)) {
        for (int v : c_)
            if (v < 0) throw InputError("DegreeOutOfRange", "negative degree component");
    }

    static Degree zero(int rank) { return Degree(std::vector<int>(rank, 0)); }
    static Degree ones(int rank) { return Degree(std::vector<int>(rank, 1)); }
    static Degree unit(int rank, int color) {
        std::vector<int> c(rank, 0);
        c.at(color) = 1;
        return Degree(std::move(c));
    }
    static Degree uniform(int rank, int value) { return Degree(std::vector<int>(rank, value)); }

    int rank() const { return static_cast<int>(c_.size()); }
    int operator[](int j) const { return c_[j]; }
    const std::vector<int>& components() const { return c_; }

    int total() const { return std::accumulate(c_.begin(), c_.end(), 0); }
    bool is_zero() const { return total() == 0; }

    bool operator==(const Degree& o) const { return c_ == o.c_; }
    bool operator!=(const Degree& o) const { return c_ != o.c_; }

    // componentwise partial order
    bool operator<=(const Degree& o) const {
        if (rank() != o.rank()) return false;
        for (int j = 0; j < rank(); ++j)
            if (c_[j] > o.c_[j]) return false;
        return true;
    }

    Degree operator+(const Degree& o) const {
        check_rank(o);
        Degree r = *this;
        for (int j = 0; j < rank(); ++j) r.c_[j] += o.c_[j];
        return r;
    }

    // defined only when o <= *this
    Degree operator-(const Degree& o) const {
        check_rank(o);
        if (!(o <= *this))
            throw CheckError("DegreeOutOfRange", "degree subtraction " + str() + " - " + o.str());
        Degree r = *this;
        for (int j = 0; j < rank(); ++j) r.c_[j] -= o.c_[j];
        return r;
    }

    Degree join(const Degree& o) const {
        check_rank(o);
        Degree r = *this;
        for (int j = 0; j < rank(); ++j) r.c_[j] = std::max(r.c_[j], o.c_[j]);
        return r;
    }

    // lexicographic; used only to fix deterministic orderings
    bool lex_less(const Degree& o) const { return c_ < o.c_; }

    std::string str() const {
        std::string s = "(";
        for (int j = 0; j < rank(); ++j) {
            if (j) s += ",";
            s += std::to_string(c_[j]);
        }
        return s + ")";
    }

private:
    void check_rank(const Degree& o) const {
        if (rank() != o.rank()) throw InputError("DegreeOutOfRange", "rank mismatch");
    }

    std::vector<int> c_;
};

} // namespace hrg
