#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "vecmax/cone.hpp"
#include "vecmax/scalar.hpp"

namespace vecmax {

/// How a law verdict was obtained.
enum class Method { proven, sampled, exhaustive, analytic, informational };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::proven: return "proven";
        case Method::sampled: return "sampled";
        case Method::exhaustive: return "exhaustive";
        case Method::analytic: return "analytic";
        case Method::informational: return "informational";
    }
    return "?";
}

/// Verdict for one law: pass/fail, how it was established, how many samples were drawn, the
/// smallest membership margin seen (negative means violated), and the first witness.
struct LawCheck {
    std::string law;
    bool pass = true;
    Method method = Method::sampled;
    std::size_t samples = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string witness;

    void record(double margin) {
        ++samples;
        worst_margin = std::min(worst_margin, margin);
    }
    void fail(std::string w) {
        if (pass) witness = std::move(w);
        pass = false;
    }
};

struct LawReport {
    std::vector<LawCheck> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.pass; });
    }
    const LawCheck* find(const std::string& law) const {
        for (const auto& c : checks) {
            if (c.law == law) return &c;
        }
        return nullptr;
    }
    void append(const LawReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

/// Sample points for the law validators: the geometric grid 2^j, j in [grid_lo, grid_hi],
/// plus `uniform_draws` draws from [0, uniform_max] with a recorded seed.
struct SamplingPolicy {
    std::uint64_t seed = 20100101;
    int grid_lo = -20;
    int grid_hi = 20;
    std::size_t uniform_draws = 100;
    double uniform_max = 1024.0;

    std::vector<double> grid() const {
        std::vector<double> g;
        for (int j = grid_lo; j <= grid_hi; ++j) g.push_back(std::ldexp(1.0, j));
        return g;
    }

    std::vector<double> uniform(std::uint64_t stream) const {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        std::uniform_real_distribution<double> dist(0.0, uniform_max);
        std::vector<double> out(uniform_draws);
        for (auto& v : out) v = dist(rng);
        return out;
    }
};

/// Slack used by sampled float checks: relative to the magnitude of the data, zero when exact.
template <class T>
T law_slack(double scale) {
    if constexpr (is_exact_v<T>) {
        return T(0);
    } else {
        return 1e-12 * std::max(1.0, scale);
    }
}

template <class T>
double max_abs(const BasicVector<T>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) m = std::max(m, std::abs(ScalarTraits<T>::to_double(v[i])));
    return m;
}

/// Signed distance-like margin of v with respect to the cone: >= 0 iff v is a member (up to
/// tolerance). Orthant: smallest entry. Halfspaces: smallest <n, v>. Lex: the first nonzero
/// entry (0 for the zero vector).
template <class T>
double membership_margin(const ConvexCone<T>& cone, const BasicVector<T>& v) {
    using S = ScalarTraits<T>;
    switch (cone.kind()) {
        case ConeKind::orthant: {
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < v.dim(); ++i) m = std::min(m, S::to_double(v[i]));
            return m + S::to_double(cone.tolerance());
        }
        case ConeKind::halfspaces: {
            double m = std::numeric_limits<double>::infinity();
            for (const auto& n : cone.normals()) m = std::min(m, S::to_double(dot(n, v)));
            return m + S::to_double(cone.tolerance());
        }
        case ConeKind::lex:
            for (std::size_t i = 0; i < v.dim(); ++i) {
                if (v[i] != T(0)) return S::to_double(v[i]);
            }
            return 0.0;
    }
    return 0.0;
}

}  // namespace vecmax
