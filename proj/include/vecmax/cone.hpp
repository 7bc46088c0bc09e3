#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vecmax/detail/linalg.hpp"
#include "vecmax/error.hpp"
#include "vecmax/scalar.hpp"
#include "vecmax/vector.hpp"

namespace vecmax {

/// Slack for membership of computed (normalized) generators; zero in exact mode.
template <class T>
T generator_slack() {
    if constexpr (is_exact_v<T>) {
        return T(0);
    } else {
        return 1e-10;
    }
}

enum class ConeKind { orthant, halfspaces, lex };

inline const char* to_string(ConeKind k) {
    switch (k) {
        case ConeKind::orthant: return "orthant";
        case ConeKind::halfspaces: return "halfspaces";
        case ConeKind::lex: return "lex";
    }
    return "?";
}

/// Result of cone_pointedness: `witness` is a nonzero v with v and -v both in the cone.
template <class T>
struct Pointedness {
    bool pointed = true;
    std::optional<BasicVector<T>> witness;
};

/// A convex cone with a decidable membership predicate.
///
/// Three representations are supported:
///  - orthant(n): { v : v_i >= 0 }
///  - halfspaces(N): { v : <n, v> >= 0 for every row n of N }
///  - lex(n): { v : v = 0 or the first nonzero entry of v is positive }
///
/// `tolerance` is the membership slack for float inputs and is ignored by lex, whose rule is
/// exact. Construction rejects the degenerate cone {0} and the improper cone (all of R^n).
template <class T>
class ConvexCone {
public:
    static ConvexCone orthant(std::size_t dim, T tolerance = T(0)) {
        return ConvexCone(ConeKind::orthant, dim, {}, tolerance);
    }

    static ConvexCone halfspaces(std::vector<BasicVector<T>> normals, T tolerance = T(0)) {
        if (normals.empty()) throw InvalidArgument("halfspace cone needs at least one normal");
        const std::size_t dim = normals.front().dim();
        return ConvexCone(ConeKind::halfspaces, dim, std::move(normals), tolerance);
    }

    static ConvexCone lex(std::size_t dim) { return ConvexCone(ConeKind::lex, dim, {}, T(0)); }

    ConeKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<BasicVector<T>>& normals() const noexcept { return normals_; }
    const T& tolerance() const noexcept { return tolerance_; }

    /// v in K.
    bool contains(const BasicVector<T>& v) const { return contains_within(v, T(0)); }

    /// v in K up to an extra absolute slack; used by sampled law checks in float mode.
    /// For lex the slack snaps entries of magnitude <= slack to zero before the rule applies.
    bool contains_within(const BasicVector<T>& v, const T& slack) const {
        if (v.dim() != dim_) throw DimensionMismatch(dim_, v.dim());
        switch (kind_) {
            case ConeKind::orthant:
                for (std::size_t i = 0; i < dim_; ++i) {
                    if (v[i] < -(tolerance_ + slack)) return false;
                }
                return true;
            case ConeKind::halfspaces:
                for (const auto& n : normals_) {
                    T norm1(0);
                    if (slack != T(0)) {
                        for (std::size_t i = 0; i < dim_; ++i) norm1 += abs_value(n[i]);
                    }
                    if (dot(n, v) < -(tolerance_ + slack * norm1)) return false;
                }
                return true;
            case ConeKind::lex:
                for (std::size_t i = 0; i < dim_; ++i) {
                    if (abs_value(v[i]) <= slack) continue;
                    return v[i] > T(0);
                }
                return true;
        }
        return false;
    }

    /// y1 <=_K y2, i.e. y2 - y1 in K.
    bool leq(const BasicVector<T>& y1, const BasicVector<T>& y2) const {
        y1.check_dim(y2);
        return contains(y2 - y1);
    }

    /// v in K \ (-K).
    bool contains_strictly(const BasicVector<T>& v) const { return contains(v) && !contains(-v); }

    Pointedness<T> pointedness() const {
        if (kind_ != ConeKind::halfspaces) return {};
        auto lineality = detail::nullspace(normals_, dim_);
        if (lineality.empty()) return {};
        return {false, canonical_sign(detail::normalized(lineality.front()))};
    }

    /// Basis of the lineality space K ∩ (-K) (empty for orthant and lex).
    std::vector<BasicVector<T>> lineality() const {
        if (kind_ != ConeKind::halfspaces) return {};
        return detail::nullspace(normals_, dim_);
    }

    /// Finite generating set: K is the conic hull of the returned vectors.
    ///
    /// Orthant: the unit vectors. Halfspaces: the extreme rays of the pointed part plus
    /// +-lineality basis. Lex is not finitely generated; its closure { v_1 >= 0 } is returned
    /// as e_1, +-e_2, ..., +-e_n, and `closure_only` flags this.
    std::vector<BasicVector<T>> generators(bool* closure_only = nullptr) const {
        if (closure_only) *closure_only = kind_ == ConeKind::lex;
        std::vector<BasicVector<T>> out;
        switch (kind_) {
            case ConeKind::orthant:
                for (std::size_t i = 0; i < dim_; ++i) out.push_back(BasicVector<T>::unit(dim_, i));
                return out;
            case ConeKind::lex:
                out.push_back(BasicVector<T>::unit(dim_, 0));
                for (std::size_t i = 1; i < dim_; ++i) {
                    out.push_back(BasicVector<T>::unit(dim_, i));
                    out.push_back(-BasicVector<T>::unit(dim_, i));
                }
                return out;
            case ConeKind::halfspaces:
                return halfspace_generators();
        }
        return out;
    }

    std::string describe() const {
        std::string s = std::string(to_string(kind_)) + "(" + std::to_string(dim_) + ")";
        if (kind_ == ConeKind::halfspaces) s += "[" + std::to_string(normals_.size()) + " normals]";
        return s;
    }

private:
    ConvexCone(ConeKind kind, std::size_t dim, std::vector<BasicVector<T>> normals, T tolerance)
        : kind_(kind), dim_(dim), normals_(std::move(normals)), tolerance_(tolerance) {
        if (dim_ == 0) throw InvalidArgument("cone dimension must be positive");
        if (tolerance_ < T(0)) throw InvalidArgument("cone tolerance must be nonnegative");
        if (kind_ == ConeKind::halfspaces) validate_halfspaces();
    }

    static BasicVector<T> canonical_sign(BasicVector<T> v) {
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (v[i] != T(0)) return v[i] < T(0) ? -v : v;
        }
        return v;
    }

    void validate_halfspaces() const {
        bool any_nonzero = false;
        for (const auto& n : normals_) {
            if (n.dim() != dim_) throw DimensionMismatch(dim_, n.dim());
            any_nonzero = any_nonzero || !n.is_zero();
        }
        if (!any_nonzero) throw InvalidArgument("improper cone: every normal is zero (cone is all of R^n)");
        if (halfspace_generators().empty()) {
            throw InvalidArgument("degenerate cone: the halfspaces only contain the zero vector");
        }
    }

    std::vector<BasicVector<T>> halfspace_generators() const {
        constexpr double kMaxSubsets = 2.0e5;
        std::vector<BasicVector<T>> out;
        auto lin = detail::nullspace(normals_, dim_);
        const std::size_t r = dim_ - lin.size();
        if (r > 0 && detail::binomial(normals_.size(), r - 1) > kMaxSubsets) {
            throw InvalidArgument("halfspace cone too large for extreme-ray enumeration");
        }
        auto push_unique = [&out](BasicVector<T> v) {
            v = detail::normalized(std::move(v));
            for (const auto& w : out) {
                if (w == v) return;
            }
            out.push_back(std::move(v));
        };
        if (r > 0) {
            detail::for_each_subset(normals_.size(), r - 1, [&](const std::vector<std::size_t>& sub) {
                std::vector<BasicVector<T>> rows;
                for (auto i : sub) rows.push_back(normals_[i]);
                for (const auto& b : lin) rows.push_back(b);
                auto ns = detail::nullspace(rows, dim_);
                if (ns.size() != 1) return;
                const auto& d = ns.front();
                if (contains_within(d, generator_slack<T>())) push_unique(d);
                if (contains_within(-d, generator_slack<T>())) push_unique(-d);
            });
        }
        for (const auto& b : lin) {
            push_unique(b);
            push_unique(-b);
        }
        return out;
    }

    ConeKind kind_;
    std::size_t dim_;
    std::vector<BasicVector<T>> normals_;
    T tolerance_;
};

/// K ⊆ H, decided on a generating set of K (exact for every supported pair of kinds).
template <class T>
bool cone_includes(const ConvexCone<T>& outer, const ConvexCone<T>& inner) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch(outer.dim(), inner.dim());
    if (inner.kind() == ConeKind::lex && outer.kind() == ConeKind::lex) return true;
    // lex is convex, so generator containment suffices when lex is the outer cone; when lex is
    // the inner cone and the outer cone is closed, containing lex is containing its closure.
    for (const auto& g : inner.generators()) {
        if (!outer.contains_within(g, generator_slack<T>())) return false;
    }
    return true;
}

/// Free-function spellings of the cone predicates.
template <class T>
bool cone_contains(const ConvexCone<T>& k, const BasicVector<T>& v) {
    return k.contains(v);
}

template <class T>
bool cone_leq(const ConvexCone<T>& k, const BasicVector<T>& y1, const BasicVector<T>& y2) {
    return k.leq(y1, y2);
}

template <class T>
Pointedness<T> cone_pointedness(const ConvexCone<T>& k) {
    return k.pointedness();
}

/// Counterexample to the Archimedean property of H: h, v in H, h not in H ∩ (-H), with
/// tau*h <=_H v for every sampled tau.
template <class T>
struct ArchimedeanCounterexample {
    BasicVector<T> h;
    BasicVector<T> v;
};

/// Geometric grid tau_max * 2^{-(steps-1)}, ..., tau_max / 2, tau_max.
template <class T>
std::vector<T> geometric_tau_grid(const T& tau_max, std::size_t steps) {
    std::vector<T> grid;
    grid.reserve(steps);
    T tau = tau_max;
    for (std::size_t i = 0; i < steps; ++i) {
        grid.push_back(tau);
        tau /= T(2);
    }
    std::reverse(grid.begin(), grid.end());
    return grid;
}

/// Sampling falsifier for the Archimedean property. A returned pair proves H is not
/// Archimedean; an empty result proves nothing.
template <class T>
std::optional<ArchimedeanCounterexample<T>> archimedean_falsify(
    const ConvexCone<T>& cone, const std::vector<std::pair<BasicVector<T>, BasicVector<T>>>& candidates,
    const T& tau_max, std::size_t steps) {
    if (candidates.empty()) throw InvalidArgument("archimedean_falsify: empty candidate list");
    if (!(tau_max > T(0)) || steps == 0) {
        throw InvalidArgument("archimedean_falsify: tau_max and steps must be positive");
    }
    const auto grid = geometric_tau_grid(tau_max, steps);
    for (const auto& [h, v] : candidates) {
        if (h.dim() != cone.dim()) throw DimensionMismatch(cone.dim(), h.dim());
        if (v.dim() != cone.dim()) throw DimensionMismatch(cone.dim(), v.dim());
        if (!cone.contains(h) || !cone.contains(v)) continue;
        if (cone.contains(-h)) continue;  // h in H ∩ (-H)
        const bool bounded = std::all_of(grid.begin(), grid.end(),
                                         [&](const T& tau) { return cone.leq(tau * h, v); });
        if (bounded) return ArchimedeanCounterexample<T>{h, v};
    }
    return std::nullopt;
}

/// The shipped witness for lex(n), n >= 2: h = e_2, v = e_1, since e_1 - tau*e_2 is in lex.
template <class T>
std::pair<BasicVector<T>, BasicVector<T>> lex_archimedean_witness(std::size_t dim) {
    if (dim < 2) throw InvalidArgument("lex(1) is the half-line and is Archimedean");
    return {BasicVector<T>::unit(dim, 1), BasicVector<T>::unit(dim, 0)};
}

/// Candidate pairs built from +-unit vectors and the shipped lex witness.
template <class T>
std::vector<std::pair<BasicVector<T>, BasicVector<T>>> standard_archimedean_candidates(std::size_t dim) {
    std::vector<BasicVector<T>> dirs;
    for (std::size_t i = 0; i < dim; ++i) {
        dirs.push_back(BasicVector<T>::unit(dim, i));
        dirs.push_back(-BasicVector<T>::unit(dim, i));
    }
    std::vector<std::pair<BasicVector<T>, BasicVector<T>>> out;
    if (dim >= 2) out.push_back(lex_archimedean_witness<T>(dim));
    for (const auto& h : dirs) {
        for (const auto& v : dirs) out.emplace_back(h, v);
    }
    return out;
}

/// Archimedean status per representation kind: orthant and closed halfspace cones are
/// Archimedean; lex(n) for n >= 2 is not.
template <class T>
bool is_archimedean_kind(const ConvexCone<T>& cone) {
    return cone.kind() != ConeKind::lex || cone.dim() < 2;
}

}  // namespace vecmax
