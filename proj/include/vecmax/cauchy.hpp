#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vecmax/error.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/instance.hpp"

namespace vecmax {

/// Result for one threshold delta.
template <class T>
struct CauchyEntry {
    T delta;
    /// Least N <= len-2 such that e(seq[p], seq[q]) <= delta for all p, q >= N. Tails of a single
    /// point are excluded, so a finite sequence is not Cauchy by default.
    std::optional<std::size_t> modulus;
    /// (n, m): for each n <= len-2 with a far successor, the first m > n with e > delta. When the
    /// modulus is missing these pairs are the counterexample (capped).
    std::vector<std::pair<std::size_t, std::size_t>> far_pairs;
    /// Greedy count of jumps of length >= delta along the sequence.
    std::size_t jumps = 0;
    /// gamma(y_0 - y~) for the linear scaling t -> t*Lambda(delta): an upper bound on `jumps`
    /// (each jump consumes Lambda(delta) modulo H). +inf when the cone gives no bound.
    ExtendedReal<T> jump_bound;

    bool cauchy() const { return modulus.has_value(); }
    bool jumps_within_bound() const {
        if (jump_bound.is_pos_infinity()) return true;
        if (!jump_bound.is_finite()) return jumps == 0;
        return ScalarTraits<T>::to_double(jump_bound.hi) + 1e-9 >= static_cast<double>(jumps);
    }
};

template <class T>
struct CauchyReport {
    std::vector<std::size_t> sequence;   // indices into A
    std::vector<T> consecutive;           // e(seq[n], seq[n+1])
    std::vector<CauchyEntry<T>> entries;

    bool cauchy() const {
        for (const auto& e : entries) {
            if (!e.cauchy()) return false;
        }
        return true;
    }
};

namespace detail {

inline constexpr std::size_t kMaxFarPairs = 16;

}  // namespace detail

/// Cauchy harness for an ascending sequence of points of A, given by index.
///
/// Throws PreconditionFailed with the first pair (n, m), n < m, where seq[n] ⪰ seq[m] fails.
template <class T>
CauchyReport<T> check_ascending_cauchy(const Instance<T>& inst, const std::vector<std::size_t>& seq,
                                       const std::vector<T>& eps_grid) {
    if (seq.empty()) throw InvalidArgument("empty sequence");
    for (auto i : seq) {
        if (i >= inst.size()) throw IndexOutOfRange(i, inst.size());
    }
    for (std::size_t n = 0; n < seq.size(); ++n) {
        for (std::size_t m = n + 1; m < seq.size(); ++m) {
            if (!inst.geq(seq[n], seq[m])) {
                throw PreconditionFailed("sequence is not ascending: element " + std::to_string(n) + " (#" +
                                         std::to_string(seq[n]) + ") does not dominate element " +
                                         std::to_string(m) + " (#" + std::to_string(seq[m]) + ")");
            }
        }
    }

    const std::size_t len = seq.size();
    auto e = [&](std::size_t p, std::size_t q) { return inst.semimetric(inst.point(seq[p]), inst.point(seq[q])); };

    CauchyReport<T> rep;
    rep.sequence = seq;
    for (std::size_t n = 0; n + 1 < len; ++n) rep.consecutive.push_back(e(n, n + 1));

    const auto base = inst.lower_bound() ? BasicVector<T>(inst.point(seq.front()).y - *inst.lower_bound())
                                         : inst.point(seq.front()).y;

    for (const T& delta : eps_grid) {
        if (!(delta > T(0))) throw InvalidArgument("Cauchy thresholds must be positive");
        CauchyEntry<T> entry{delta, std::nullopt, {}, 0, ExtendedReal<T>::pos_infinity()};

        // far[n]: first m > n with e(n, m) > delta. The tail from N is delta-Cauchy iff no
        // n >= N has a far successor.
        std::vector<std::optional<std::size_t>> far(len);
        for (std::size_t n = 0; n + 1 < len; ++n) {
            for (std::size_t m = n + 1; m < len; ++m) {
                if (e(n, m) > delta) {
                    far[n] = m;
                    break;
                }
            }
            if (far[n] && entry.far_pairs.size() < detail::kMaxFarPairs) entry.far_pairs.emplace_back(n, *far[n]);
        }
        if (len >= 2) {
            std::size_t n_delta = len - 1;
            while (n_delta > 0 && !far[n_delta - 1]) --n_delta;
            if (n_delta <= len - 2) entry.modulus = n_delta;
        }

        for (std::size_t i = 0; i < len;) {
            std::size_t j = i + 1;
            while (j < len && e(i, j) < delta) ++j;
            if (j >= len) break;
            ++entry.jumps;
            i = j;
        }

        const auto step = inst.scaling().eval(delta);
        if (!inst.cone_h().contains(-step)) {
            const auto ctx = GaugeContext<T>::make(inst.cone_k(), inst.cone_h(), NormalFunction<T>::linear(step));
            entry.jump_bound = ctx.gamma(base);
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace vecmax
