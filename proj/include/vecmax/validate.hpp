#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vecmax/cone.hpp"
#include "vecmax/graph.hpp"
#include "vecmax/instance.hpp"
#include "vecmax/law.hpp"
#include "vecmax/scaling.hpp"

namespace vecmax {

enum class BoundStatus { pass, fail, not_synthesized };

inline const char* to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::pass: return "pass";
        case BoundStatus::fail: return "fail";
        case BoundStatus::not_synthesized: return "not synthesized";
    }
    return "?";
}

template <class T>
struct BoundedBelowReport {
    BoundStatus status = BoundStatus::pass;
    bool synthesized = false;
    std::optional<BasicVector<T>> lower_bound;
    std::vector<std::size_t> violating;  // indices i with y_i - y~ not in H
};

/// Checks P_Y(A) ⊆ y~ + H. Without a supplied y~, an orthant H gets the componentwise minimum of
/// P_Y(A); other kinds report "not synthesized".
template <class T>
BoundedBelowReport<T> bounded_below_check(const Instance<T>& inst) {
    BoundedBelowReport<T> rep;
    const auto& h = inst.cone_h();
    if (inst.lower_bound()) {
        rep.lower_bound = inst.lower_bound();
    } else if (h.kind() == ConeKind::orthant) {
        BasicVector<T> m = inst.points().front().y;
        for (const auto& p : inst.points()) {
            for (std::size_t i = 0; i < m.dim(); ++i) m[i] = std::min<T>(m[i], p.y[i]);
        }
        rep.lower_bound = m;
        rep.synthesized = true;
    } else {
        rep.status = BoundStatus::not_synthesized;
        return rep;
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (!h.contains(inst.points()[i].y - *rep.lower_bound)) rep.violating.push_back(i);
    }
    rep.status = rep.violating.empty() ? BoundStatus::pass : BoundStatus::fail;
    return rep;
}

/// Options for validate_instance.
struct ValidationOptions {
    SamplingPolicy sampling{};
    std::size_t cap = kDefaultPointCap;
    unsigned threads = 1;
};

/// Every checkable hypothesis of an instance: metric axioms, K ⊆ H, the scaling laws against
/// (K, H), the lower bound when supplied, and transitivity of ⪰ on A (checked, because float
/// rounding can break it).
template <class T>
LawReport validate_instance(const Instance<T>& inst, const ValidationOptions& opt = {}) {
    LawReport rep;

    LawCheck metric{"metric axioms", true, Method::exhaustive};
    const auto mrep = inst.space().validate();
    if (mrep.analytic) metric.method = Method::analytic;
    metric.samples = inst.space().size();
    if (!mrep.valid) {
        const auto& v = mrep.violations.front();
        metric.fail(std::string(to_string(v.axiom)) + " violation (" + std::to_string(v.i) + "," +
                    std::to_string(v.j) + "," + std::to_string(v.k) + "): " + v.message);
    }
    rep.checks.push_back(metric);

    LawCheck incl{"K included in H", true, Method::exhaustive};
    const auto gens = inst.cone_k().generators();
    incl.samples = gens.size();
    if (!cone_includes(inst.cone_h(), inst.cone_k())) incl.fail("a generator of K lies outside H");
    rep.checks.push_back(incl);

    rep.append(lambda_validate(inst.scaling(), inst.cone_k(), inst.cone_h(), opt.sampling));

    if (inst.lower_bound()) {
        LawCheck lb{"bounded below mod H", true, Method::exhaustive};
        const auto b = bounded_below_check(inst);
        lb.samples = inst.size();
        if (!b.violating.empty()) {
            const auto i = b.violating.front();
            lb.fail("point " + std::to_string(i) + " y = " + inst.points()[i].y.to_string() + " is not above " +
                    inst.lower_bound()->to_string());
        }
        rep.checks.push_back(lb);
    }

    LawCheck trans{"order transitive on A", true, Method::exhaustive};
    const auto g = successor_graph(inst, opt.cap, opt.threads);
    trans.samples = g.edge_count();
    if (auto bad = g.transitivity_violation()) {
        const auto [a, b, c] = *bad;
        trans.fail(std::to_string(a) + " >= " + std::to_string(b) + " >= " + std::to_string(c) + " but not " +
                   std::to_string(a) + " >= " + std::to_string(c));
    }
    rep.checks.push_back(trans);
    return rep;
}

}  // namespace vecmax
