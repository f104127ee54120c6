#include "derange/assembly.hpp"

#include "derange/error.hpp"

#include <algorithm>
#include <tuple>

namespace derange {

CycleSet::CycleSet(int n, std::vector<Cycle> cycles)
    : n_(n), cycles_(std::move(cycles)), owner_(static_cast<std::size_t>(n), -1) {
    for (std::size_t ci = 0; ci < cycles_.size(); ++ci) {
        const auto& c = cycles_[ci];
        if (c.size() < 2) throw SizeError("cycles in a set need at least two vertices");
        for (const Vertex v : c) {
            if (v < 0 || v >= n) throw SizeError("cycle vertex out of range");
            auto& o = owner_[static_cast<std::size_t>(v)];
            if (o >= 0) throw DisjointnessError("cycles share vertex " + std::to_string(v + 1));
            o = static_cast<int>(ci);
        }
    }
}

std::vector<Arc> CycleSet::arcs() const {
    std::vector<Arc> out;
    for (const auto& c : cycles_) {
        const auto a = cycle_arcs(c);
        out.insert(out.end(), a.begin(), a.end());
    }
    return out;
}

Permutation CycleSet::product() const { return Permutation::from_cycles(n_, cycles_); }

Cost cycle_set_value(const CycleSet& s, const ReducedMatrix& r) {
    const auto arcs = s.arcs();
    return cycle_value(arcs, r);
}

std::vector<Arc> sym_arcs(const CycleSet& s, const RowForm& d) {
    std::vector<Arc> out;
    for (const Arc& a : s.arcs())
        if (a.from == d.forward(d.forward(a.to))) out.push_back(a);
    return out;
}

const char* to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::sym_outside_set: return "sym_outside_set";
    case Violation::Kind::within_cycle_edge: return "within_cycle_edge";
    case Violation::Kind::cross_cycle_edge: return "cross_cycle_edge";
    case Violation::Kind::fixed_point: return "fixed_point";
    case Violation::Kind::two_cycle: return "two_cycle";
    }
    return "?";
}

std::string Violation::describe() const {
    auto arc = [](Arc a) { return "(" + std::to_string(a.from + 1) + " " + std::to_string(a.to + 1) + ")"; };
    auto edge = [this] { return "[" + std::to_string(u + 1) + " " + std::to_string(v + 1) + "]"; };
    switch (kind) {
    case Kind::sym_outside_set: return std::string(to_string(kind)) + " arc " + arc(this->arc) + " needs vertex " + std::to_string(u + 1);
    case Kind::within_cycle_edge:
    case Kind::cross_cycle_edge:
        return std::string(to_string(kind)) + " arcs " + arc(this->arc) + " and " + arc(other) + " both give edge " + edge();
    case Kind::fixed_point: return "fixed_point(" + std::to_string(u + 1) + ")";
    case Kind::two_cycle: return "two_cycle(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")";
    }
    return "?";
}

SetValidation validate_cycle_set(const CycleSet& s, const RowForm& d, const ReducedMatrix& r) {
    if (s.size() != d.size() || s.size() != r.size()) throw SizeError("cycle set, derangement and matrix sizes differ");
    SetValidation out;
    out.value = cycle_set_value(s, r);  // throws on a forbidden arc
    out.sym = sym_arcs(s, d);

    // SYM arc (a,b): its edge [a, D(b)] is the D-edge leaving D(b), which
    // stays in Ds unless D(b) is moved by s.
    for (const Arc& a : out.sym) {
        const Vertex target = d.forward(a.to);
        if (!s.covers(target)) out.violations.push_back({Violation::Kind::sym_outside_set, a, {}, target, -1});
    }

    // Edge -> (cycle, arc) for every non-SYM arc, then look for collisions.
    struct Induced {
        Vertex u, v;
        int cycle;
        Arc arc;
    };
    std::vector<Induced> induced;
    for (std::size_t ci = 0; ci < s.cycles().size(); ++ci) {
        for (const Arc& a : cycle_arcs(s.cycles()[ci])) {
            if (a.from == d.forward(d.forward(a.to))) continue;
            const Vertex x = a.from;
            const Vertex y = d.forward(a.to);
            induced.push_back({std::min(x, y), std::max(x, y), static_cast<int>(ci), a});
        }
    }
    std::sort(induced.begin(), induced.end(), [](const Induced& a, const Induced& b) {
        return std::tie(a.u, a.v, a.cycle, a.arc) < std::tie(b.u, b.v, b.cycle, b.arc);
    });
    for (std::size_t i = 0; i + 1 < induced.size(); ++i) {
        for (std::size_t j = i + 1; j < induced.size() && induced[j].u == induced[i].u && induced[j].v == induced[i].v; ++j) {
            const auto kind = induced[i].cycle == induced[j].cycle ? Violation::Kind::within_cycle_edge
                                                                   : Violation::Kind::cross_cycle_edge;
            out.violations.push_back({kind, induced[i].arc, induced[j].arc, induced[i].u, induced[i].v});
        }
    }
    out.conditions_hold = out.violations.empty();

    // Direct certificate on Ds.
    std::vector<Vertex> image(static_cast<std::size_t>(s.size()));
    for (Vertex i = 0; i < s.size(); ++i) image[static_cast<std::size_t>(i)] = i;
    for (const auto& c : s.cycles())
        for (std::size_t k = 0; k < c.size(); ++k) image[static_cast<std::size_t>(c[k])] = c[(k + 1) % c.size()];
    out.certificate_ok = true;
    for (Vertex i = 0; i < s.size(); ++i) {
        const Vertex j = d.forward(image[static_cast<std::size_t>(i)]);
        if (j == i) {
            out.certificate_ok = false;
            out.violations.push_back({Violation::Kind::fixed_point, {}, {}, i, -1});
            continue;
        }
        const Vertex back = d.forward(image[static_cast<std::size_t>(j)]);
        if (back == i && i < j) {
            out.certificate_ok = false;
            out.violations.push_back({Violation::Kind::two_cycle, {}, {}, i, j});
        }
    }
    out.valid = out.certificate_ok;
    return out;
}

Derangement apply_cycle_set(const CycleSet& s, const Derangement& d) {
    if (s.size() != d.size()) throw SizeError("cycle set and derangement sizes differ");
    Permutation composed = compose_apply(d, s.product());
    const auto check = is_edge_derangement(composed);
    if (!check.ok()) throw InvalidSetError("Ds is not a derangement of edges: " + check.describe());
    return Derangement(std::move(composed));
}

} // namespace derange
