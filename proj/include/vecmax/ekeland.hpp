#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "vecmax/error.hpp"
#include "vecmax/maximal.hpp"

namespace vecmax {

template <class T>
struct EkelandResult {
    std::size_t index;
    MaximalCertificate<T> certificate;
    /// f(start) >= f(answer) + eps*d(start, answer).
    bool descent = false;
    /// No x != answer with f(answer) >= f(x) + eps*d(answer, x).
    bool strict = false;
    std::vector<std::size_t> strict_witnesses;

    bool valid() const { return descent && strict && certificate.valid(); }
};

/// The scalar instance behind the variational principle: Y = R, K = H = R_+, Lambda(t) = eps*t,
/// A = {(i, f(i))}, bounded below by min f.
template <class T>
Instance<T> ekeland_instance(const MetricSpace<T>& space, const std::vector<T>& f, const T& eps) {
    if (f.size() != space.size()) throw DimensionMismatch(space.size(), f.size());
    if (!(eps > T(0))) throw InvalidArgument("eps must be positive");
    std::vector<ProductPoint<T>> pts;
    pts.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) pts.push_back({i, BasicVector<T>{f[i]}});
    const T lb = *std::min_element(f.begin(), f.end());
    return Instance<T>(space, ConvexCone<T>::orthant(1), ConvexCone<T>::orthant(1),
                       NormalFunction<T>::linear(BasicVector<T>{eps}), std::move(pts), BasicVector<T>{lb});
}

/// A point x with f(start) >= f(x) + eps*d(start, x) such that no x' != x has
/// f(x) >= f(x') + eps*d(x, x'). Both conditions are re-checked over all of X.
template <class T>
EkelandResult<T> ekeland_solve(const MetricSpace<T>& space, const std::vector<T>& f, const T& eps,
                               std::size_t start, const SolverOptions& opt = {}) {
    const auto inst = ekeland_instance(space, f, eps);
    if (start >= inst.size()) throw IndexOutOfRange(start, inst.size());
    auto cert = find_maximal_scc(inst, start, opt);
    const std::size_t a = cert.answer.index;
    EkelandResult<T> res{a, std::move(cert)};
    res.descent = f[start] >= f[a] + eps * space.dist(start, a);
    res.strict = true;
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (x != a && f[a] >= f[x] + eps * space.dist(a, x)) {
            res.strict = false;
            res.strict_witnesses.push_back(x);
        }
    }
    return res;
}

}  // namespace vecmax
