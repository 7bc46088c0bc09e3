#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vecmax/certificate.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/graph.hpp"
#include "vecmax/instance.hpp"

namespace vecmax {

struct SolverOptions {
    std::size_t cap = kDefaultPointCap;
    unsigned threads = 1;
};

namespace detail {

template <class T>
IndexedPoint<T> indexed(const Instance<T>& inst, std::size_t i) {
    return {i, inst.point(i)};
}

template <class T>
std::size_t require_member(const Instance<T>& inst, const ProductPoint<T>& p) {
    auto i = inst.index_of(p);
    if (!i) throw PreconditionFailed("start point " + p.to_string() + " is not in A");
    return *i;
}

struct SinkSearch {
    std::size_t answer;
    std::vector<std::size_t> chain;
};

// Among sink components reachable from start, the one with the smallest member index; its
// smallest member is the answer. The chain is a BFS path from start to the answer.
inline SinkSearch reachable_sink(const SuccessorGraph& g, const Components& comps, std::size_t start) {
    const auto parent = bfs_parents(g, start);
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::size_t best = kUnset;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (parent[v] == kUnset) continue;
        const auto c = comps.component_of[v];
        if (!comps.is_sink[c]) continue;
        best = std::min(best, comps.members[c].front());
    }
    // A finite digraph always has a sink component below any node.
    return {best, path_to(parent, best)};
}

template <class T>
MaximalCertificate<T> make_certificate(const Instance<T>& inst, std::size_t start, const SinkSearch& s, Mode mode,
                                       std::string engine) {
    std::vector<IndexedPoint<T>> chain;
    for (auto i : s.chain) chain.push_back(indexed(inst, i));
    return {indexed(inst, start), indexed(inst, s.answer), mode, std::move(engine), std::move(chain), {}};
}

}  // namespace detail

/// Whether every sink component of the graph has a single x value.
template <class T>
bool sink_components_share_x(const Instance<T>& inst, const Components& comps) {
    for (std::size_t c = 0; c < comps.count(); ++c) {
        if (!comps.is_sink[c]) continue;
        const auto x = inst.points()[comps.members[c].front()].x;
        for (auto m : comps.members[c]) {
            if (inst.points()[m].x != x) return false;
        }
    }
    return true;
}

/// Maximal point by condensation: the graph of ⪰ on A is split into strongly connected
/// components and the answer is taken from a sink component reachable from start.
///
/// The answer is dominated by start along the recorded chain. Members of one component
/// dominate each other, which forces Lambda(d) into -K ⊆ -H and hence d = 0, so every
/// successor of the answer shares its x. Ties: smallest sink component (by least member
/// index), then its least member.
template <class T>
MaximalCertificate<T> find_maximal_scc(const Instance<T>& inst, std::size_t start, const SolverOptions& opt = {}) {
    if (start >= inst.size()) throw PreconditionFailed("start index " + std::to_string(start) + " is not in A");
    const auto g = successor_graph(inst, opt.cap, opt.threads);
    const auto comps = strongly_connected_components(g);
    auto cert = detail::make_certificate(inst, start, detail::reachable_sink(g, comps, start), Mode::t2, "scc");
    cert.checks = verify_certificate(inst, cert).checks;
    return cert;
}

template <class T>
MaximalCertificate<T> find_maximal_scc(const Instance<T>& inst, const ProductPoint<T>& start,
                                       const SolverOptions& opt = {}) {
    return find_maximal_scc(inst, detail::require_member(inst, start), opt);
}

/// a < b by more than `slack`: the upper end of a plus slack is below the lower end of b.
template <class T>
bool definitely_below(const ExtendedReal<T>& a, const ExtendedReal<T>& b, double slack) {
    if (a.is_pos_infinity() || b.is_neg_infinity()) return false;
    if (a.is_neg_infinity() || b.is_pos_infinity()) return true;
    return a.hi + ScalarTraits<T>::from_double(slack) < b.lo;
}

template <class T>
bool lower_end_less(const ExtendedReal<T>& a, const ExtendedReal<T>& b) {
    if (a.tag != b.tag) return static_cast<int>(a.tag) < static_cast<int>(b.tag);
    return a.is_finite() && a.lo < b.lo;
}

/// Potential used by the iterative engine: the shifted gauge Phi, one coordinate of y, or an
/// explicit table indexed like A.
template <class T>
struct Potential {
    enum class Kind { phi, y_component, table };
    Kind kind = Kind::phi;
    std::size_t component = 0;
    std::vector<T> table;

    static Potential phi() { return {Kind::phi, 0, {}}; }
    static Potential y_component(std::size_t i) { return {Kind::y_component, i, {}}; }
    static Potential custom(std::vector<T> values) { return {Kind::table, 0, std::move(values)}; }

    std::string describe() const {
        switch (kind) {
            case Kind::phi: return "phi";
            case Kind::y_component: return "y:" + std::to_string(component);
            case Kind::table: return "table";
        }
        return "?";
    }
};

/// slack(n) = initial * ratio^n.
struct SlackSchedule {
    double initial = 1.0;
    double ratio = 0.5;

    double at(std::size_t n) const { return initial * std::pow(ratio, static_cast<double>(n)); }
};

/// Iterative engine: from the current point c, move to a successor whose potential is within
/// slack(n) of the infimum over all successors of c; stop once every successor of c has the
/// same potential as c. The potential must be ⪰-decreasing on A, which is checked on every
/// edge first. Finite A bounds the number of strict descents; a step cap guards the schedule.
template <class T>
MaximalCertificate<T> find_maximal_bb(const Instance<T>& inst, std::size_t start, const Potential<T>& potential,
                                      const SlackSchedule& schedule = {}, const GaugeContext<T>* ctx = nullptr,
                                      const SolverOptions& opt = {}) {
    const std::size_t n = inst.size();
    if (start >= n) throw PreconditionFailed("start index " + std::to_string(start) + " is not in A");

    std::vector<ExtendedReal<T>> pot;
    pot.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = inst.points()[i];
        switch (potential.kind) {
            case Potential<T>::Kind::phi:
                if (ctx == nullptr) throw InvalidArgument("phi potential requires a gauge context");
                pot.push_back(shifted_phi(inst, *ctx, p));
                break;
            case Potential<T>::Kind::y_component:
                if (potential.component >= inst.dim()) throw IndexOutOfRange(potential.component, inst.dim());
                pot.push_back(ExtendedReal<T>::exact(p.y[potential.component]));
                break;
            case Potential<T>::Kind::table:
                if (potential.table.size() != n) throw DimensionMismatch(n, potential.table.size());
                pot.push_back(ExtendedReal<T>::exact(potential.table[i]));
                break;
        }
    }
    const bool float_phi = potential.kind == Potential<T>::Kind::phi && !is_exact_v<T>;
    const double eq_slack = float_phi ? 2.0 * ctx->tol() : 0.0;
    if (!pot[start].is_finite()) {
        throw NotInDomain("potential at start is " + pot[start].to_string());
    }

    const auto g = successor_graph(inst, opt.cap, opt.threads);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b : g.successors(a)) {
            if (definitely_below(pot[a], pot[b], eq_slack)) {
                throw PreconditionFailed("potential is not decreasing: #" + std::to_string(a) + " dominates #" +
                                         std::to_string(b) + " but " + pot[a].to_string() + " < " +
                                         pot[b].to_string());
            }
        }
    }

    const std::size_t step_cap = 4 * n + 64;
    std::size_t cur = start;
    std::vector<std::size_t> chain{start};
    for (std::size_t step = 0;; ++step) {
        const auto& succ = g.successors(cur);
        std::optional<std::size_t> lowest;
        bool stable = true;
        for (std::size_t b : succ) {
            if (!lowest || lower_end_less(pot[b], pot[*lowest])) lowest = b;
            if (definitely_below(pot[b], pot[cur], eq_slack)) stable = false;
        }
        if (stable) break;
        if (step >= step_cap) {
            throw NonTermination("iterative engine exceeded " + std::to_string(step_cap) +
                                 " steps; the slack schedule is too loose");
        }
        const double slack = schedule.at(step);
        std::size_t next = *lowest;
        for (std::size_t b : succ) {
            if (!definitely_below(pot[*lowest], pot[b], slack)) {
                next = b;
                break;
            }
        }
        cur = next;
        chain.push_back(cur);
    }

    detail::SinkSearch found{cur, chain};
    const Mode mode = potential.kind == Potential<T>::Kind::phi ? Mode::t3 : Mode::t2;
    auto cert = detail::make_certificate(inst, start, found, mode, "bb:" + potential.describe());
    cert.checks = verify_certificate(inst, cert, ctx).checks;

    CheckVerdict same_pot{"successors of answer share its potential"};
    for (std::size_t b : g.successors(cur)) {
        if (definitely_below(pot[b], pot[cur], eq_slack)) {
            same_pot.fail("#" + std::to_string(b) + " potential " + pot[b].to_string() + " vs " + pot[cur].to_string());
        }
    }
    cert.checks.push_back(same_pot);
    return cert;
}

/// Report of the gauge-domain preconditions on A (after the shift by y~).
template <class T>
struct GaugeDomainReport {
    std::vector<std::size_t> outside_h;   // y - y~ not in H
    std::vector<std::size_t> in_domain;   // finite gauge
    std::vector<std::size_t> negative;    // finite gauge with lo < 0 (cannot happen for y in H)

    bool pass() const { return outside_h.empty() && !in_domain.empty() && negative.empty(); }
};

template <class T>
GaugeDomainReport<T> gauge_domain_check(const Instance<T>& inst, const GaugeContext<T>& ctx) {
    GaugeDomainReport<T> rep;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const auto& p = inst.points()[i];
        const auto y = inst.lower_bound() ? BasicVector<T>(p.y - *inst.lower_bound()) : p.y;
        if (!ctx.cone().contains(y)) {
            rep.outside_h.push_back(i);
            continue;
        }
        const auto phi = ctx.gamma(y);
        if (phi.is_finite()) {
            rep.in_domain.push_back(i);
            if (phi.lo < T(0)) rep.negative.push_back(i);
        }
    }
    return rep;
}

/// Maximal point restricted to the gauge domain, without any Archimedean assumption on H.
///
/// Preconditions checked on all of A: P_Y(A) - y~ ⊆ H, the gauge domain is nonempty and Phi is
/// nonnegative, and start lies in the domain. Successors of a domain point stay in the domain
/// (Phi is ⪰-decreasing), so the sink search from start never leaves it.
template <class T>
MaximalCertificate<T> find_maximal_gauge(const Instance<T>& inst, const GaugeContext<T>& ctx, std::size_t start,
                                         const SolverOptions& opt = {}) {
    if (start >= inst.size()) throw PreconditionFailed("start index " + std::to_string(start) + " is not in A");
    const auto dom = gauge_domain_check(inst, ctx);
    if (!dom.outside_h.empty()) {
        std::string w;
        for (std::size_t i = 0; i < dom.outside_h.size() && i < 8; ++i) {
            w += (i ? ", #" : "#") + std::to_string(dom.outside_h[i]);
        }
        throw PreconditionFailed("P_Y(A) is not inside H after the shift; offending points: " + w);
    }
    if (dom.in_domain.empty()) throw PreconditionFailed("the gauge is +inf on all of A");
    if (!dom.negative.empty()) {
        throw PreconditionFailed("negative gauge at #" + std::to_string(dom.negative.front()));
    }
    const auto phi_start = shifted_phi(inst, ctx, inst.point(start));
    if (!phi_start.is_finite()) throw NotInDomain("gauge at start is " + phi_start.to_string());

    const auto g = successor_graph(inst, opt.cap, opt.threads);
    const auto comps = strongly_connected_components(g);
    auto cert = detail::make_certificate(inst, start, detail::reachable_sink(g, comps, start), Mode::t3, "gauge");
    cert.checks = verify_certificate(inst, cert, &ctx).checks;
    return cert;
}

}  // namespace vecmax
