#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vecmax/certificate.hpp"
#include "vecmax/cone.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/graph.hpp"
#include "vecmax/instance.hpp"
#include "vecmax/law.hpp"
#include "vecmax/maximal.hpp"
#include "vecmax/scaling.hpp"
#include "vecmax/validate.hpp"

namespace vecmax {

namespace detail {

// Streams of one seed: stream s is seeded with seed ^ (golden * (s + 1)).
inline std::mt19937_64 law_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// Samples are snapped to multiples of 2^-20 so that exact mode gets short rationals.
template <class T>
T dyadic(double u) {
    return ScalarTraits<T>::from_double(std::ldexp(std::round(std::ldexp(u, 20)), -20));
}

template <class T>
double to_d(const T& v) {
    return ScalarTraits<T>::to_double(v);
}

}  // namespace detail

/// Seeded sampler of cone members and of arbitrary vectors, entries in [-scale, scale].
template <class T>
class ConeSampler {
public:
    ConeSampler(const ConvexCone<T>& cone, std::uint64_t seed, std::uint64_t stream, double scale = 100.0)
        : cone_(cone), rng_(detail::law_rng(seed, stream)), scale_(scale) {
        if (cone_.kind() == ConeKind::halfspaces) gens_ = cone_.generators();
    }

    T uniform(double lo, double hi) { return detail::dyadic<T>(std::uniform_real_distribution<double>(lo, hi)(rng_)); }

    BasicVector<T> ambient() {
        BasicVector<T> v(cone_.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) v[i] = uniform(-scale_, scale_);
        return v;
    }

    /// A member of the cone; boundary points are drawn with positive probability.
    BasicVector<T> member() {
        const std::size_t n = cone_.dim();
        switch (cone_.kind()) {
            case ConeKind::orthant: {
                BasicVector<T> v(n);
                for (std::size_t i = 0; i < n; ++i) {
                    if (coin(4)) continue;
                    v[i] = uniform(0.0, scale_);
                }
                return v;
            }
            case ConeKind::lex: {
                BasicVector<T> v(n);
                const std::size_t lead = std::uniform_int_distribution<std::size_t>(0, n)(rng_);
                if (lead == n) return v;
                v[lead] = uniform(0.0, scale_);
                if (v[lead] == T(0)) v[lead] = T(1);
                for (std::size_t i = lead + 1; i < n; ++i) v[i] = uniform(-scale_, scale_);
                return v;
            }
            case ConeKind::halfspaces: {
                for (int attempt = 0; attempt < 64; ++attempt) {
                    BasicVector<T> v(n);
                    for (const auto& g : gens_) {
                        if (coin(3)) continue;
                        v += uniform(0.0, scale_ / static_cast<double>(gens_.size())) * g;
                    }
                    if (cone_.contains(v)) return v;
                }
                return BasicVector<T>(n);
            }
        }
        return BasicVector<T>(n);
    }

    std::mt19937_64& rng() noexcept { return rng_; }

private:
    bool coin(int one_in) { return std::uniform_int_distribution<int>(0, one_in - 1)(rng_) == 0; }

    ConvexCone<T> cone_;
    std::mt19937_64 rng_;
    double scale_;
    std::vector<BasicVector<T>> gens_;
};

/// Comparison slack for gauge laws: the enclosure tolerance plus float rounding of the inputs at
/// the given magnitude; zero in exact mode.
template <class T>
T gauge_slack(const GaugeContext<T>& ctx, double scale) {
    if constexpr (is_exact_v<T>) {
        return T(0);
    } else {
        return ctx.tol() + 64.0 * DBL_EPSILON * std::max(1.0, std::abs(scale));
    }
}

namespace detail {

template <class T>
std::string gauge_witness(const std::string& what, const BasicVector<T>& y, const ExtendedReal<T>& g) {
    return what + ": y = " + y.to_string() + ", gamma = " + g.to_string();
}

}  // namespace detail

/// gamma(Lambda(t)) = t: the enclosure contains t and is at most tol wide, for t = 0 and
/// `samples` draws from [0, t_max] (t_max is clipped to s_max / 2).
template <class T>
LawCheck gauge_identity_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples,
                            double t_max = 1048576.0) {
    LawCheck c{"gauge identity", true, Method::sampled};
    t_max = std::min(t_max, ctx.s_max() / 2.0);
    auto rng = detail::law_rng(seed, 101);
    std::uniform_real_distribution<double> dist(0.0, t_max);
    const T tol = ScalarTraits<T>::from_double(ctx.tol());
    for (std::size_t i = 0; i <= samples; ++i) {
        const T t = i == 0 ? T(0) : detail::dyadic<T>(dist(rng));
        const auto y = ctx.scaling().eval(t);
        const auto g = ctx.gamma(y);
        if (!g.is_finite()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail("t = " + ScalarTraits<T>::to_string(t) + ": gamma = " + g.to_string());
            continue;
        }
        c.record(std::min({detail::to_d<T>(t - g.lo), detail::to_d<T>(g.hi - t), detail::to_d<T>(tol - g.width())}));
        if (!g.contains(t)) {
            c.fail("t = " + ScalarTraits<T>::to_string(t) + " outside " + g.to_string());
        } else if (g.width() > tol) {
            c.fail("t = " + ScalarTraits<T>::to_string(t) + ": enclosure " + g.to_string() + " wider than tol");
        }
    }
    return c;
}

/// y <=_H y + k implies gamma(y) <= gamma(y + k), compared on upper ends.
template <class T>
LawCheck gauge_monotone_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge monotone", true, Method::sampled};
    ConeSampler<T> s(ctx.cone(), seed, 102);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto y = s.member();
        const auto k = s.member();
        const auto g1 = ctx.gamma(y);
        const auto g2 = ctx.gamma(y + k);
        if (g1.is_neg_infinity() || g2.is_pos_infinity()) {
            c.record(std::numeric_limits<double>::infinity());
            continue;
        }
        if (g1.is_pos_infinity() || g2.is_neg_infinity()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail(detail::gauge_witness("gamma(y) = " + g1.to_string() + ", gamma(y+k) = " + g2.to_string(), k, g2));
            continue;
        }
        const T slack = gauge_slack(ctx, g2.upper());
        c.record(detail::to_d<T>(g2.hi + slack - g1.hi));
        if (g1.hi > g2.hi + slack) {
            c.fail("y = " + y.to_string() + ", k = " + k.to_string() + ": " + g1.to_string() + " > " + g2.to_string());
        }
    }
    return c;
}

/// gamma(y1 + y2) >= gamma(y1) + gamma(y2).
template <class T>
LawCheck gauge_superadditive_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge super-additive", true, Method::sampled};
    ConeSampler<T> s(ctx.cone(), seed, 103);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto y1 = s.member();
        const auto y2 = s.member();
        const auto g1 = ctx.gamma(y1);
        const auto g2 = ctx.gamma(y2);
        const auto g12 = ctx.gamma(y1 + y2);
        if (g1.is_neg_infinity() || g2.is_neg_infinity() || g12.is_pos_infinity()) {
            c.record(std::numeric_limits<double>::infinity());
            continue;
        }
        const std::string w = "y1 = " + y1.to_string() + ", y2 = " + y2.to_string() + ": " + g12.to_string() +
                              " < " + g1.to_string() + " + " + g2.to_string();
        if (g1.is_pos_infinity() || g2.is_pos_infinity() || g12.is_neg_infinity()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail(w);
            continue;
        }
        const T slack = gauge_slack(ctx, g12.upper());
        c.record(detail::to_d<T>(g12.hi + slack - g1.lo - g2.lo));
        if (g12.hi + slack < g1.lo + g2.lo) c.fail(w);
    }
    return c;
}

/// gamma(y1 - y2) <= gamma(y1) - gamma(y2) whenever gamma(y2) is finite; y1 = y2 + k with k in H.
template <class T>
LawCheck gauge_subtractive_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge subtractive", true, Method::sampled};
    ConeSampler<T> s(ctx.cone(), seed, 104);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto y2 = s.member();
        const auto y1 = y2 + s.member();
        const auto g1 = ctx.gamma(y1);
        const auto g2 = ctx.gamma(y2);
        const auto gd = ctx.gamma(y1 - y2);
        if (!g2.is_finite() || g1.is_pos_infinity() || gd.is_neg_infinity()) {
            c.record(std::numeric_limits<double>::infinity());
            continue;
        }
        const std::string w = "y1 = " + y1.to_string() + ", y2 = " + y2.to_string() + ": " + gd.to_string() +
                              " > " + g1.to_string() + " - " + g2.to_string();
        if (g1.is_neg_infinity() || gd.is_pos_infinity()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail(w);
            continue;
        }
        const T slack = gauge_slack(ctx, g1.upper());
        c.record(detail::to_d<T>(g1.hi - g2.lo + slack - gd.lo));
        if (gd.lo > g1.hi - g2.lo + slack) c.fail(w);
    }
    return c;
}

/// gamma(y + Lambda(t)) >= gamma(y) + t.
template <class T>
LawCheck gauge_translation_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge sup-translation", true, Method::sampled};
    ConeSampler<T> s(ctx.cone(), seed, 105);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto y = s.member();
        const T t = s.uniform(0.0, 100.0);
        const auto g = ctx.gamma(y);
        const auto gt = ctx.gamma(y + ctx.scaling().eval(t));
        if (g.is_neg_infinity() || gt.is_pos_infinity()) {
            c.record(std::numeric_limits<double>::infinity());
            continue;
        }
        const std::string w = "y = " + y.to_string() + ", t = " + ScalarTraits<T>::to_string(t) + ": " +
                              gt.to_string() + " < " + g.to_string() + " + t";
        if (g.is_pos_infinity() || gt.is_neg_infinity()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail(w);
            continue;
        }
        const T slack = gauge_slack(ctx, gt.upper());
        c.record(detail::to_d<T>(gt.hi + slack - g.lo - t));
        if (gt.hi + slack < g.lo + t) c.fail(w);
    }
    return c;
}

/// For pointed H: -Lambda(tau) lies outside H, so its gauge carries the -inf tag.
template <class T>
LawCheck gauge_apex_tag_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge -inf below apex", true, Method::sampled};
    if (!ctx.cone_pointed()) {
        c.method = Method::informational;
        c.witness = "H is not pointed; law not applicable";
        return c;
    }
    auto rng = detail::law_rng(seed, 106);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (std::size_t i = 0; i < samples; ++i) {
        T tau = detail::dyadic<T>(dist(rng));
        if (tau == T(0)) tau = T(1);
        const auto g = ctx.gamma(-ctx.scaling().eval(tau));
        c.record(g.is_neg_infinity() ? 0.0 : -1.0);
        if (!g.is_neg_infinity()) c.fail("tau = " + ScalarTraits<T>::to_string(tau) + ": gamma = " + g.to_string());
    }
    return c;
}

/// The feasible set of s is an interval: Lambda(s) <=_H y for s in [0, lo(gamma(y))].
template <class T>
LawCheck gauge_hereditary_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge hereditary", true, Method::sampled};
    ConeSampler<T> s(ctx.cone(), seed, 107);
    for (std::size_t i = 0; i < samples; ++i) {
        const auto y = s.member();
        const auto g = ctx.gamma(y);
        if (!g.is_finite()) {
            c.record(std::numeric_limits<double>::infinity());
            continue;
        }
        const T u = s.uniform(0.0, 1.0);
        for (const T& sv : {T(g.lo * u), g.lo}) {
            const bool ok = ctx.admits(y, sv);
            c.record(ok ? 0.0 : -1.0);
            if (!ok) c.fail(detail::gauge_witness("Lambda(" + ScalarTraits<T>::to_string(sv) + ") not below y", y, g));
        }
    }
    return c;
}

/// Whether the closed-form oracle applies: orthant H and a linear scaling with positive slope.
template <class T>
bool oracle_applies(const GaugeContext<T>& ctx) {
    if (ctx.cone().kind() != ConeKind::orthant || ctx.cone().tolerance() != T(0) || !ctx.scaling().is_linear()) {
        return false;
    }
    const auto k = ctx.scaling().coefficient_sum();
    for (std::size_t i = 0; i < k.dim(); ++i) {
        if (!(k[i] > T(0))) return false;
    }
    return true;
}

/// Agreement of the gauge with gamma_linear_orthant on positive vectors: both ends of the
/// enclosure within tol of the closed form.
template <class T>
LawCheck gauge_oracle_law(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawCheck c{"gauge oracle agreement", true, Method::sampled};
    if (!oracle_applies(ctx)) {
        c.method = Method::informational;
        c.witness = "closed form needs orthant H and linear Lambda with positive slope";
        return c;
    }
    const auto k = ctx.scaling().coefficient_sum();
    auto rng = detail::law_rng(seed, 108);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (std::size_t i = 0; i < samples; ++i) {
        BasicVector<T> y(k.dim());
        for (std::size_t j = 0; j < y.dim(); ++j) {
            y[j] = detail::dyadic<T>(dist(rng));
            if (y[j] == T(0)) y[j] = T(1);
        }
        const auto o = gamma_linear_orthant(k, y);
        const auto g = ctx.gamma(y);
        if (!g.is_finite()) {
            c.record(-std::numeric_limits<double>::infinity());
            c.fail(detail::gauge_witness("oracle " + o.to_string(), y, g));
            continue;
        }
        const T slack = gauge_slack(ctx, o.upper());
        const T dev = std::max<T>(abs_value(T(g.lo - o.lo)), abs_value(T(g.hi - o.lo)));
        c.record(detail::to_d<T>(slack - dev));
        if (dev > slack) c.fail(detail::gauge_witness("oracle " + o.to_string(), y, g));
    }
    return c;
}

/// Every gauge law at one seed, `samples` draws each.
template <class T>
LawReport gauge_law_suite(const GaugeContext<T>& ctx, std::uint64_t seed, std::size_t samples) {
    LawReport rep;
    rep.checks.push_back(gauge_identity_law(ctx, seed, samples));
    rep.checks.push_back(gauge_monotone_law(ctx, seed, samples));
    rep.checks.push_back(gauge_superadditive_law(ctx, seed, samples));
    rep.checks.push_back(gauge_subtractive_law(ctx, seed, samples));
    rep.checks.push_back(gauge_translation_law(ctx, seed, samples));
    rep.checks.push_back(gauge_apex_tag_law(ctx, seed, samples));
    rep.checks.push_back(gauge_hereditary_law(ctx, seed, samples));
    rep.checks.push_back(gauge_oracle_law(ctx, seed, samples));
    return rep;
}

/// Reports whether the sampling falsifier finds a non-Archimedean pair in H. Being
/// non-Archimedean is a property of the instance, not an error, so the check always passes.
template <class T>
LawCheck archimedean_probe(const ConvexCone<T>& h) {
    LawCheck c{"H archimedean probe", true, Method::informational};
    const auto cands = standard_archimedean_candidates<T>(h.dim());
    const auto cex = archimedean_falsify(h, cands, T(1073741824), 31);
    c.samples = cands.size();
    c.witness = cex ? "not Archimedean: tau*" + cex->h.to_string() + " <=_H " + cex->v.to_string() +
                          " for all sampled tau"
                    : "no counterexample among " + std::to_string(cands.size()) + " candidate pairs";
    return c;
}

/// Options for props_suite.
struct PropsOptions {
    std::uint64_t seed = SamplingPolicy{}.seed;
    std::size_t samples = 1000;
    std::size_t cap = kDefaultPointCap;
    unsigned threads = 1;
};

/// All property checks for an instance: hypotheses (metric, cones, scaling laws, lower bound,
/// transitivity), the gauge laws, the Archimedean probe, the gauge domain on A, Phi decreasing
/// along the order, and the gauge bound d(a.x, b.x) <= gamma(a.y - b.y) on every edge.
template <class T>
LawReport props_suite(const Instance<T>& inst, const GaugeContext<T>& ctx, const PropsOptions& opt = {}) {
    SamplingPolicy policy;
    policy.seed = opt.seed;
    LawReport rep = validate_instance(inst, ValidationOptions{policy, opt.cap, opt.threads});
    rep.checks.push_back(strict_positivity_check(inst.scaling(), inst.cone_k(), inst.cone_h(), policy));
    rep.checks.push_back(subtractivity_check(inst.scaling(), inst.cone_k(), policy));
    rep.append(gauge_law_suite(ctx, opt.seed, opt.samples));
    rep.checks.push_back(archimedean_probe(inst.cone_h()));

    const auto dom = gauge_domain_check(inst, ctx);
    LawCheck domain{"gauge domain on A", true, Method::informational};
    domain.samples = inst.size();
    domain.witness = std::to_string(dom.in_domain.size()) + " of " + std::to_string(inst.size()) +
                     " points in the domain, " + std::to_string(dom.outside_h.size()) + " outside H";
    rep.checks.push_back(domain);

    const auto g = successor_graph(inst, opt.cap, opt.threads);
    std::vector<ExtendedReal<T>> phi;
    phi.reserve(inst.size());
    for (const auto& p : inst.points()) phi.push_back(shifted_phi(inst, ctx, p));

    LawCheck dec{"Phi decreasing along the order", true, Method::exhaustive};
    LawCheck step{"gauge bounds step length", true, Method::exhaustive};
    for (std::size_t a = 0; a < inst.size(); ++a) {
        for (std::size_t b : g.successors(a)) {
            const double slack = is_exact_v<T> ? 0.0 : 2.0 * ctx.tol();
            const bool bad = definitely_below(phi[a], phi[b], slack);
            dec.record(bad ? -1.0 : 0.0);
            if (bad) {
                dec.fail("#" + std::to_string(a) + " dominates #" + std::to_string(b) + " but Phi " +
                         phi[a].to_string() + " < " + phi[b].to_string());
            }

            const T d = inst.semimetric(inst.point(a), inst.point(b));
            const auto gd = ctx.gamma(inst.point(a).y - inst.point(b).y);
            if (gd.is_pos_infinity()) {
                step.record(std::numeric_limits<double>::infinity());
                continue;
            }
            const T slack_t = gauge_slack(ctx, detail::to_d<T>(d));
            const bool ok = gd.is_finite() && d <= gd.hi + slack_t;
            step.record(gd.is_finite() ? detail::to_d<T>(gd.hi + slack_t - d) : -std::numeric_limits<double>::infinity());
            if (!ok) {
                step.fail("#" + std::to_string(a) + " -> #" + std::to_string(b) + ": d = " +
                          ScalarTraits<T>::to_string(d) + ", gamma = " + gd.to_string());
            }
        }
    }
    rep.checks.push_back(dec);
    rep.checks.push_back(step);
    return rep;
}

}  // namespace vecmax
