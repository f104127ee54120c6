#include "derange/reduced.hpp"

#include "derange/error.hpp"

#include <algorithm>
#include <sstream>

namespace derange {

ReducedMatrix build_reduced(const CostMatrix& m, const Derangement& d) {
    const int n = m.size();
    if (d.size() != n) throw SizeError("derangement and matrix sizes differ");
    ReducedMatrix r;
    r.n_ = n;
    r.values_.assign(static_cast<std::size_t>(n) * n, 0);
    r.permitted_.assign(static_cast<std::size_t>(n) * n, 1);
    const auto& rows = d.rows();
    for (Vertex i = 0; i < n; ++i) {
        const Cost base = m(i, rows.forward(i));
        for (Vertex j = 0; j < n; ++j) {
            const auto k = r.index(i, j);
            if (j == i || j == rows.inverse(i)) {
                r.permitted_[k] = 0;
                continue;
            }
            r.values_[k] = m(i, rows.forward(j)) - base;
        }
    }
    return r;
}

ReducedMatrix ReducedMatrix::from_arcs(int n, std::span<const std::pair<Arc, Cost>> arcs) {
    if (n < 1) throw SizeError("reduced matrix needs at least one vertex");
    ReducedMatrix r;
    r.n_ = n;
    r.values_.assign(static_cast<std::size_t>(n) * n, 0);
    r.permitted_.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [arc, value] : arcs) {
        if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n) throw SizeError("arc out of range");
        if (arc.from == arc.to) throw ForbiddenArcError("identity arc in fixture");
        r.values_[r.index(arc.from, arc.to)] = value;
        r.permitted_[r.index(arc.from, arc.to)] = 1;
    }
    return r;
}

Cost ReducedMatrix::value(Vertex i, Vertex j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || !permitted(i, j)) {
        throw ForbiddenArcError("arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") is forbidden");
    }
    return values_[index(i, j)];
}

std::string ReducedMatrix::dump_tsv() const {
    std::ostringstream out;
    for (Vertex j = 0; j < n_; ++j) out << '\t' << j + 1;
    out << '\n';
    for (Vertex i = 0; i < n_; ++i) {
        out << i + 1;
        for (Vertex j = 0; j < n_; ++j) {
            out << '\t';
            if (permitted(i, j))
                out << values_[index(i, j)];
            else
                out << 'X';
        }
        out << '\n';
    }
    return out.str();
}

Cost cycle_value(std::span<const Arc> arcs, const ReducedMatrix& r) {
    Cost total = 0;
    for (const Arc& a : arcs) total += r.value(a);
    return total;
}

std::vector<Arc> cycle_arcs(const Cycle& c) {
    std::vector<Arc> arcs;
    if (c.size() < 2) return arcs;
    arcs.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) arcs.push_back({c[k], c[(k + 1) % c.size()]});
    return arcs;
}

std::vector<Arc> permutation_arcs(const Permutation& s) {
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < s.size(); ++i)
        if (s(i) != i) arcs.push_back({i, s(i)});
    return arcs;
}

Cycle canonical_rotation(const Cycle& c) {
    Cycle out = c;
    if (!out.empty()) std::rotate(out.begin(), std::min_element(out.begin(), out.end()), out.end());
    return out;
}

} // namespace derange
