#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "vecmax/gauge.hpp"
#include "vecmax/instance.hpp"

namespace vecmax {

/// t2: successors of the answer share its x. t3: additionally share its gauge value, with the
/// answer inside the gauge domain.
enum class Mode { t2, t3 };

inline const char* to_string(Mode m) { return m == Mode::t2 ? "t2" : "t3"; }

/// One verdict of a verification transcript, with every witness found (up to a cap).
struct CheckVerdict {
    std::string name;
    bool pass = true;
    std::vector<std::string> witnesses;

    static constexpr std::size_t kMaxWitnesses = 32;

    void fail(std::string w) {
        pass = false;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
    }
};

struct VerificationReport {
    std::vector<CheckVerdict> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckVerdict& c) { return c.pass; });
    }
};

/// A point of A together with its index in A.
template <class T>
struct IndexedPoint {
    std::size_t index = 0;
    ProductPoint<T> point;
};

/// Solver output: start and answer, the ascending path the engine followed, and the
/// verification transcript.
template <class T>
struct MaximalCertificate {
    IndexedPoint<T> start;
    IndexedPoint<T> answer;
    Mode mode = Mode::t2;
    std::string engine;
    std::vector<IndexedPoint<T>> chain;
    std::vector<CheckVerdict> checks;

    bool valid() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckVerdict& c) { return c.pass; });
    }
};

/// Phi(p) = gamma(p.y - y~) with y~ the instance's lower bound (0 when absent).
template <class T>
ExtendedReal<T> shifted_phi(const Instance<T>& inst, const GaugeContext<T>& ctx, const ProductPoint<T>& p) {
    return inst.lower_bound() ? ctx.gamma(p.y - *inst.lower_bound()) : ctx.gamma(p.y);
}

/// Gauge values agree: same tag, and finite enclosures overlap (exact equality in exact mode,
/// where enclosures have zero width).
template <class T>
bool gauge_equal(const ExtendedReal<T>& a, const ExtendedReal<T>& b) {
    return a.overlaps(b, T(0));
}

namespace detail {

template <class T>
std::string point_ref(const IndexedPoint<T>& p) {
    return "#" + std::to_string(p.index) + " " + p.point.to_string();
}

}  // namespace detail

/// Exhaustive check of a certificate against A: the points belong to A, the chain is
/// ascending from start to answer, start ⪰ answer, and every b in A with answer ⪰ b has
/// b.x = answer.x (so e(answer, b) = 0); for t3 also gamma(b.y) = gamma(answer.y) with
/// the answer in the gauge domain.
template <class T>
VerificationReport verify_certificate(const Instance<T>& inst, const MaximalCertificate<T>& cert,
                                      const GaugeContext<T>* ctx = nullptr) {
    VerificationReport rep;
    const std::size_t n = inst.size();

    CheckVerdict members{"certificate points belong to A"};
    auto check_member = [&](const IndexedPoint<T>& p, const char* role) {
        if (p.index >= n || !(inst.points()[p.index] == p.point)) {
            members.fail(std::string(role) + " " + detail::point_ref(p) + " is not the point of A at that index");
        }
    };
    check_member(cert.start, "start");
    check_member(cert.answer, "answer");
    for (const auto& c : cert.chain) check_member(c, "chain point");
    rep.checks.push_back(members);
    if (!members.pass) return rep;

    CheckVerdict chain{"chain ascending from start to answer"};
    if (cert.chain.empty()) {
        chain.fail("empty chain");
    } else {
        if (cert.chain.front().index != cert.start.index) chain.fail("chain does not begin at start");
        if (cert.chain.back().index != cert.answer.index) chain.fail("chain does not end at answer");
        for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i) {
            if (!inst.geq(cert.chain[i].point, cert.chain[i + 1].point)) {
                chain.fail("step " + std::to_string(i) + ": " + detail::point_ref(cert.chain[i]) +
                           " does not dominate " + detail::point_ref(cert.chain[i + 1]));
            }
        }
    }
    rep.checks.push_back(chain);

    CheckVerdict dominated{"start dominates answer"};
    if (!inst.geq(cert.start.point, cert.answer.point)) {
        dominated.fail(detail::point_ref(cert.start) + " does not dominate " + detail::point_ref(cert.answer));
    }
    rep.checks.push_back(dominated);

    CheckVerdict same_x{"successors of answer share its x"};
    std::vector<std::size_t> successors;
    for (std::size_t b = 0; b < n; ++b) {
        if (!inst.geq(cert.answer.point, inst.points()[b])) continue;
        successors.push_back(b);
        if (inst.points()[b].x != cert.answer.point.x) {
            same_x.fail("answer dominates #" + std::to_string(b) + " " + inst.points()[b].to_string() +
                        " at distance " +
                        ScalarTraits<T>::to_string(inst.semimetric(cert.answer.point, inst.points()[b])));
        }
    }
    rep.checks.push_back(same_x);

    if (cert.mode == Mode::t3) {
        CheckVerdict domain{"answer in gauge domain"};
        CheckVerdict same_gauge{"successors of answer share its gauge"};
        if (ctx == nullptr) {
            domain.fail("no gauge context supplied");
            same_gauge.fail("no gauge context supplied");
        } else {
            const auto phi_answer = shifted_phi(inst, *ctx, cert.answer.point);
            if (!phi_answer.is_finite()) domain.fail("gauge of answer is " + phi_answer.to_string());
            for (std::size_t b : successors) {
                const auto phi_b = shifted_phi(inst, *ctx, inst.points()[b]);
                if (!gauge_equal(phi_answer, phi_b)) {
                    same_gauge.fail("#" + std::to_string(b) + ": gauge " + phi_b.to_string() + " vs answer " +
                                    phi_answer.to_string());
                }
            }
        }
        rep.checks.push_back(domain);
        rep.checks.push_back(same_gauge);
    }
    return rep;
}

}  // namespace vecmax
