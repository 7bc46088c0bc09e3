#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "vecmax/cone.hpp"
#include "vecmax/error.hpp"
#include "vecmax/law.hpp"
#include "vecmax/scalar.hpp"
#include "vecmax/scaling.hpp"
#include "vecmax/vector.hpp"

namespace vecmax {

enum class GaugeTag { neg_infinity, finite, pos_infinity };

inline const char* to_string(GaugeTag t) {
    switch (t) {
        case GaugeTag::neg_infinity: return "neg_infinity";
        case GaugeTag::finite: return "finite";
        case GaugeTag::pos_infinity: return "pos_infinity";
    }
    return "?";
}

/// A value of R ∪ {-inf, +inf} known up to an enclosure [lo, hi].
template <class T>
struct ExtendedReal {
    GaugeTag tag = GaugeTag::neg_infinity;
    T lo{0};
    T hi{0};

    static ExtendedReal neg_infinity() { return {GaugeTag::neg_infinity, T(0), T(0)}; }
    static ExtendedReal pos_infinity() { return {GaugeTag::pos_infinity, T(0), T(0)}; }
    static ExtendedReal finite(T lo, T hi) { return {GaugeTag::finite, std::move(lo), std::move(hi)}; }
    static ExtendedReal exact(const T& v) { return {GaugeTag::finite, v, v}; }

    bool is_finite() const noexcept { return tag == GaugeTag::finite; }
    bool is_neg_infinity() const noexcept { return tag == GaugeTag::neg_infinity; }
    bool is_pos_infinity() const noexcept { return tag == GaugeTag::pos_infinity; }

    T width() const { return is_finite() ? T(hi - lo) : T(0); }
    bool contains(const T& v) const { return is_finite() && lo <= v && v <= hi; }

    /// Lower/upper end as a double, with the infinite tags mapped to +-infinity.
    double lower() const {
        switch (tag) {
            case GaugeTag::neg_infinity: return -std::numeric_limits<double>::infinity();
            case GaugeTag::pos_infinity: return std::numeric_limits<double>::infinity();
            case GaugeTag::finite: return ScalarTraits<T>::to_double(lo);
        }
        return 0.0;
    }
    double upper() const {
        switch (tag) {
            case GaugeTag::neg_infinity: return -std::numeric_limits<double>::infinity();
            case GaugeTag::pos_infinity: return std::numeric_limits<double>::infinity();
            case GaugeTag::finite: return ScalarTraits<T>::to_double(hi);
        }
        return 0.0;
    }

    /// Same tag and, when finite, enclosures within `slack` of each other.
    bool overlaps(const ExtendedReal& o, const T& slack) const {
        if (tag != o.tag) return false;
        if (!is_finite()) return true;
        return lo <= o.hi + slack && o.lo <= hi + slack;
    }

    std::string to_string() const {
        if (!is_finite()) return vecmax::to_string(tag);
        if (lo == hi) return ScalarTraits<T>::to_string(lo);
        return "[" + ScalarTraits<T>::to_string(lo) + ", " + ScalarTraits<T>::to_string(hi) + "]";
    }
};

/// The pair (H, Lambda) with its numeric policy, ready to evaluate
/// gamma(y) = sup { s >= 0 : Lambda(s) <=_H y }.
///
/// `make` validates Lambda against (K, H) and throws when a coefficient lies outside
/// K \ (-H); there is no way to obtain an unvalidated context.
template <class T>
class GaugeContext {
public:
    static constexpr double kDefaultTol = 1e-9;
    static constexpr double kDefaultSMax = 1099511627776.0;  // 2^40

    static GaugeContext make(const ConvexCone<T>& k, ConvexCone<T> h, NormalFunction<T> l,
                             double tol = kDefaultTol, double s_max = kDefaultSMax) {
        if (!(tol > 0.0)) throw InvalidArgument("gauge tolerance must be positive");
        if (!(s_max >= 1.0)) throw InvalidArgument("gauge s_max must be at least 1");
        if (l.dim() != h.dim()) throw DimensionMismatch(h.dim(), l.dim());
        SamplingPolicy quick;
        quick.grid_lo = -4;
        quick.grid_hi = 4;
        quick.uniform_draws = 8;
        const auto rep = lambda_validate(l, k, h, quick);
        if (!rep.pass()) {
            for (const auto& c : rep.checks) {
                if (!c.pass) throw InvalidArgument("scaling rejected for gauge context: " + c.law + ": " + c.witness);
            }
        }
        if constexpr (is_exact_v<T>) {
            if (!l.is_linear()) throw InvalidArgument("exact gauge evaluation requires a linear scaling");
        }
        return GaugeContext(std::move(h), std::move(l), tol, s_max);
    }

    const ConvexCone<T>& cone() const noexcept { return h_; }
    const NormalFunction<T>& scaling() const noexcept { return l_; }
    double tol() const noexcept { return tol_; }
    double s_max() const noexcept { return s_max_; }
    bool cone_pointed() const noexcept { return pointed_; }

    /// gamma(y) as an enclosure.
    ///
    /// Float mode: -inf outside H; otherwise double s from 1 while Lambda(s) <=_H y, declaring
    /// +inf past s_max, then bisect the bracket to width <= tol (two-ulp padding included).
    /// Exact mode uses the closed form of the linear case.
    ExtendedReal<T> gamma(const BasicVector<T>& y) const {
        if (y.dim() != h_.dim()) throw DimensionMismatch(h_.dim(), y.dim());
        if (!h_.contains(y)) return ExtendedReal<T>::neg_infinity();
        if (pointed_ && y.is_zero()) return ExtendedReal<T>::exact(T(0));
        if constexpr (is_exact_v<T>) {
            return gamma_linear_exact(y);
        } else {
            return gamma_bisect(y);
        }
    }

    /// The membership predicate s -> [Lambda(s) <=_H y], whose truth set is an interval [0, gamma].
    bool admits(const BasicVector<T>& y, const T& s) const { return h_.contains(y - l_.eval(s)); }

private:
    GaugeContext(ConvexCone<T> h, NormalFunction<T> l, double tol, double s_max)
        : h_(std::move(h)), l_(std::move(l)), tol_(tol), s_max_(s_max), pointed_(h_.pointedness().pointed) {}

    // The float predicate is flat for about one ulp around the boundary, so the bracket is
    // widened by kPadUlps ulps on each side; the padding counts against the width budget.
    static constexpr int kPadUlps = 2;

    static double step_ulps(double v, int n, double toward) {
        for (int i = 0; i < n; ++i) v = std::nextafter(v, toward);
        return v;
    }

    ExtendedReal<T> gamma_bisect(const BasicVector<T>& y) const {
        double lo = 0.0;
        double hi = 1.0;
        while (admits(y, hi)) {
            lo = hi;
            hi *= 2.0;
            if (hi > s_max_) return ExtendedReal<T>::pos_infinity();
        }
        const double inf = std::numeric_limits<double>::infinity();
        while (true) {
            const double padded = step_ulps(hi, kPadUlps, inf) - std::max(0.0, step_ulps(lo, kPadUlps, -inf));
            if (padded <= tol_) break;
            const double mid = lo + (hi - lo) / 2.0;
            if (mid <= lo || mid >= hi) break;
            if (admits(y, mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double out_lo = lo > 0.0 ? std::max(0.0, step_ulps(lo, kPadUlps, -inf)) : 0.0;
        return ExtendedReal<T>::finite(out_lo, step_ulps(hi, kPadUlps, inf));
    }

    // sup { s : y - s*k in H } for the slope k of a linear scaling.
    ExtendedReal<T> gamma_linear_exact(const BasicVector<T>& y) const {
        const auto k = l_.coefficient_sum();
        std::optional<T> best;
        auto bound = [&best](const T& v) {
            if (!best || v < *best) best = v;
        };
        switch (h_.kind()) {
            case ConeKind::orthant:
                for (std::size_t i = 0; i < k.dim(); ++i) {
                    if (k[i] > T(0)) bound((y[i] + h_.tolerance()) / k[i]);
                }
                break;
            case ConeKind::halfspaces:
                for (const auto& n : h_.normals()) {
                    const T nk = dot(n, k);
                    if (nk > T(0)) bound((dot(n, y) + h_.tolerance()) / nk);
                }
                break;
            case ConeKind::lex: {
                std::size_t j = 0;
                while (j < k.dim() && k[j] == T(0)) ++j;
                if (j == k.dim()) return ExtendedReal<T>::pos_infinity();
                for (std::size_t i = 0; i < j; ++i) {
                    // y is in lex, so its first nonzero entry ahead of k's leading index is
                    // positive and survives any subtraction of s*k.
                    if (y[i] != T(0)) return ExtendedReal<T>::pos_infinity();
                }
                if (k[j] > T(0)) bound(y[j] / k[j]);
                break;
            }
        }
        if (!best || ScalarTraits<T>::to_double(*best) > s_max_) return ExtendedReal<T>::pos_infinity();
        return ExtendedReal<T>::exact(*best);
    }

    ConvexCone<T> h_;
    NormalFunction<T> l_;
    double tol_;
    double s_max_;
    bool pointed_;
};

template <class T>
ExtendedReal<T> gamma_eval(const GaugeContext<T>& ctx, const BasicVector<T>& y) {
    return ctx.gamma(y);
}

/// Phi(x, y) = gamma(y): the gauge composed with the projection onto Y.
template <class T, class Point>
ExtendedReal<T> phi_eval(const GaugeContext<T>& ctx, const Point& point) {
    return ctx.gamma(point.y);
}

/// Closed-form gauge of the linear scaling t -> k0*t over the orthant: min_i y_i / k0_i when
/// y >= 0, -inf otherwise. Independent of GaugeContext; used as an oracle.
template <class T>
ExtendedReal<T> gamma_linear_orthant(const BasicVector<T>& k0, const BasicVector<T>& y) {
    k0.check_dim(y);
    for (std::size_t i = 0; i < k0.dim(); ++i) {
        if (!(k0[i] > T(0))) throw InvalidArgument("gamma_linear_orthant needs a strictly positive k0");
    }
    for (std::size_t i = 0; i < y.dim(); ++i) {
        if (y[i] < T(0)) return ExtendedReal<T>::neg_infinity();
    }
    T best = y[0] / k0[0];
    for (std::size_t i = 1; i < y.dim(); ++i) best = std::min<T>(best, y[i] / k0[i]);
    return ExtendedReal<T>::exact(best);
}

}  // namespace vecmax
