#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vecmax/cone.hpp"
#include "vecmax/error.hpp"
#include "vecmax/law.hpp"
#include "vecmax/scalar.hpp"
#include "vecmax/vector.hpp"

namespace vecmax {

/// Raised when a power term with exponent > 1 is requested. The witness is always the pair
/// t1 = t2 = 1, where (t1 + t2)^exp = 2^exp exceeds t1^exp + t2^exp = 2.
class SubadditivityViolation : public InvalidArgument {
public:
    explicit SubadditivityViolation(double exponent)
        : InvalidArgument("exponent " + std::to_string(exponent) +
                          " > 1 is not subadditive: at t1 = t2 = 1, (t1+t2)^exp = " +
                          std::to_string(std::pow(2.0, exponent)) + " > t1^exp + t2^exp = 2"),
          exponent_(exponent) {}

    double exponent() const noexcept { return exponent_; }
    double t1() const noexcept { return 1.0; }
    double t2() const noexcept { return 1.0; }
    double lhs() const { return std::pow(2.0, exponent_); }
    double rhs() const noexcept { return 2.0; }

private:
    double exponent_;
};

template <class T>
struct PowerTerm {
    BasicVector<T> k;
    double exponent = 1.0;
};

/// The scaling t -> sum_i k_i * t^{exp_i} from R_+ into the cone, with 0 < exp_i <= 1.
///
/// Exponents outside ]0, 1] are rejected at construction, so subadditivity is a theorem for
/// every constructible value. Whether each k_i lies in K \ (-H) depends on the instance's
/// cones and is checked by lambda_validate.
template <class T>
class NormalFunction {
public:
    explicit NormalFunction(std::vector<PowerTerm<T>> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw InvalidArgument("normal function needs at least one term");
        for (const auto& term : terms_) {
            terms_.front().k.check_dim(term.k);
            if (!std::isfinite(term.exponent)) throw InvalidArgument("exponent is not finite");
            if (term.exponent > 1.0) throw SubadditivityViolation(term.exponent);
            if (!(term.exponent > 0.0)) {
                throw InvalidArgument("exponent " + std::to_string(term.exponent) +
                                      " <= 0: the term is not zero at t = 0 or not increasing");
            }
            if constexpr (is_exact_v<T>) {
                if (term.exponent != 1.0) {
                    throw InvalidArgument("exact mode supports only unit exponents (linear scaling)");
                }
            }
        }
    }

    /// Single-term linear scaling t -> k0 * t.
    static NormalFunction linear(BasicVector<T> k0) {
        return NormalFunction({PowerTerm<T>{std::move(k0), 1.0}});
    }

    std::size_t dim() const noexcept { return terms_.front().k.dim(); }
    const std::vector<PowerTerm<T>>& terms() const noexcept { return terms_; }

    bool is_linear() const {
        for (const auto& t : terms_) {
            if (t.exponent != 1.0) return false;
        }
        return true;
    }

    /// Sum of the coefficients; equals Lambda(1) and, for linear scalings, the slope.
    BasicVector<T> coefficient_sum() const {
        BasicVector<T> s(dim());
        for (const auto& t : terms_) s += t.k;
        return s;
    }

    BasicVector<T> operator()(const T& t) const { return eval(t); }

    BasicVector<T> eval(const T& t) const {
        if (t < T(0)) throw InvalidArgument("scaling evaluated at negative t");
        BasicVector<T> out(dim());
        if (t == T(0)) return out;
        for (const auto& term : terms_) {
            const T w = ScalarTraits<T>::pow(t, term.exponent);
            for (std::size_t i = 0; i < out.dim(); ++i) out[i] += term.k[i] * w;
        }
        return out;
    }

    template <class U>
    NormalFunction<U> convert() const {
        std::vector<PowerTerm<U>> out;
        for (const auto& t : terms_) out.push_back({t.k.template convert<U>(), t.exponent});
        return NormalFunction<U>(std::move(out));
    }

private:
    std::vector<PowerTerm<T>> terms_;
};

template <class T>
BasicVector<T> lambda_eval(const NormalFunction<T>& l, const T& t) {
    return l.eval(t);
}

namespace detail {

template <class T>
std::vector<T> scaling_samples(const SamplingPolicy& policy, std::uint64_t stream) {
    std::vector<T> out;
    for (double g : policy.grid()) out.push_back(ScalarTraits<T>::from_double(g));
    for (double u : policy.uniform(stream)) out.push_back(ScalarTraits<T>::from_double(u));
    return out;
}

/// Ordered pairs (larger, smaller): consecutive grid points, each grid point against 0, and
/// uniform draws paired up.
template <class T>
std::vector<std::pair<T, T>> ordered_pairs(const SamplingPolicy& policy, std::uint64_t stream) {
    std::vector<std::pair<T, T>> out;
    const auto grid = policy.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const T g = ScalarTraits<T>::from_double(grid[i]);
        out.emplace_back(g, T(0));
        if (i + 1 < grid.size()) out.emplace_back(ScalarTraits<T>::from_double(grid[i + 1]), g);
    }
    const auto a = policy.uniform(stream);
    const auto b = policy.uniform(stream + 1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        T x = ScalarTraits<T>::from_double(a[i]);
        T y = ScalarTraits<T>::from_double(b[i]);
        if (x < y) std::swap(x, y);
        out.emplace_back(x, y);
    }
    return out;
}

template <class T>
std::string pair_witness(const char* what, const T& a, const T& b) {
    return std::string(what) + " at (" + ScalarTraits<T>::to_string(a) + ", " + ScalarTraits<T>::to_string(b) + ")";
}

}  // namespace detail

/// Checks the scaling against the cone pair: coefficients k_i in K \ (-H) (exact), strict
/// increase modulo (K, H) on sampled pairs, and subadditivity modulo K (proven for the power
/// family with coefficients in K, asserted on samples anyway).
template <class T>
LawReport lambda_validate(const NormalFunction<T>& l, const ConvexCone<T>& k, const ConvexCone<T>& h,
                          const SamplingPolicy& policy = {}) {
    if (l.dim() != k.dim()) throw DimensionMismatch(k.dim(), l.dim());
    if (l.dim() != h.dim()) throw DimensionMismatch(h.dim(), l.dim());
    LawReport rep;

    LawCheck coeff{"coefficients in K\\(-H)", true, Method::exhaustive};
    for (std::size_t i = 0; i < l.terms().size(); ++i) {
        const auto& c = l.terms()[i].k;
        coeff.record(membership_margin(k, c));
        if (!k.contains(c)) {
            coeff.fail("term " + std::to_string(i) + ": k = " + c.to_string() + " is not in K");
        } else if (h.contains(-c)) {
            coeff.fail("term " + std::to_string(i) + ": k = " + c.to_string() + " lies in -H");
        }
    }
    rep.checks.push_back(coeff);

    // With every k_i in K \ (-H) and H convex, a positive combination of the k_i stays out of
    // -H, so strict increase follows for closed cones; lex keeps the sampled label.
    LawCheck incr{"strict increase mod (K,H)", true,
                  coeff.pass && h.kind() != ConeKind::lex ? Method::proven : Method::sampled};
    for (const auto& [hi, lo] : detail::ordered_pairs<T>(policy, 1)) {
        if (!(hi > lo)) continue;
        const auto diff = l.eval(hi) - l.eval(lo);
        incr.record(membership_margin(k, diff));
        if (!k.contains_within(diff, law_slack<T>(max_abs(l.eval(hi))))) {
            incr.fail(detail::pair_witness("Lambda(tau)-Lambda(t) not in K", hi, lo));
        } else if (h.contains(-diff)) {
            incr.fail(detail::pair_witness("Lambda(tau)-Lambda(t) in -H", hi, lo));
        }
    }
    rep.checks.push_back(incr);

    LawCheck sub{"subadditive mod K", true, coeff.pass ? Method::proven : Method::sampled};
    const auto ts = detail::scaling_samples<T>(policy, 2);
    const auto us = detail::scaling_samples<T>(policy, 3);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const T& t1 = ts[i];
        const T& t2 = us[i];
        const auto sum = l.eval(t1 + t2);
        const auto gap = l.eval(t1) + l.eval(t2) - sum;
        sub.record(membership_margin(k, gap));
        if (!k.contains_within(gap, law_slack<T>(max_abs(sum)))) {
            sub.fail(detail::pair_witness("Lambda(t1+t2) > Lambda(t1)+Lambda(t2)", t1, t2));
        }
    }
    rep.checks.push_back(sub);
    return rep;
}

/// Lambda(t) in K \ (-H) for sampled t > 0.
template <class T>
LawCheck strict_positivity_check(const NormalFunction<T>& l, const ConvexCone<T>& k,
                                 const ConvexCone<T>& h, const SamplingPolicy& policy = {}) {
    LawCheck c{"strict positivity", true, Method::sampled};
    for (const T& t : detail::scaling_samples<T>(policy, 4)) {
        if (!(t > T(0))) continue;
        const auto v = l.eval(t);
        c.record(membership_margin(k, v));
        if (!k.contains_within(v, law_slack<T>(max_abs(v)))) {
            c.fail("Lambda(" + ScalarTraits<T>::to_string(t) + ") not in K");
        } else if (h.contains(-v)) {
            c.fail("Lambda(" + ScalarTraits<T>::to_string(t) + ") in -H");
        }
    }
    return c;
}

/// Lambda(t1 - t2) >=_K Lambda(t1) - Lambda(t2) for sampled t1 >= t2 >= 0.
template <class T>
LawCheck subtractivity_check(const NormalFunction<T>& l, const ConvexCone<T>& k,
                             const SamplingPolicy& policy = {}) {
    LawCheck c{"subtractive mod K", true, Method::sampled};
    auto pairs = detail::ordered_pairs<T>(policy, 5);
    for (const T& t : detail::scaling_samples<T>(policy, 6)) pairs.emplace_back(t, t);
    for (const auto& [t1, t2] : pairs) {
        const auto a = l.eval(t1);
        const auto gap = l.eval(t1 - t2) - (a - l.eval(t2));
        c.record(membership_margin(k, gap));
        if (!k.contains_within(gap, law_slack<T>(max_abs(a)))) {
            c.fail(detail::pair_witness("Lambda(t1-t2) < Lambda(t1)-Lambda(t2)", t1, t2));
        }
    }
    return c;
}

}  // namespace vecmax
