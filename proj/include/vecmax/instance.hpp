#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vecmax/cone.hpp"
#include "vecmax/error.hpp"
#include "vecmax/metric.hpp"
#include "vecmax/scaling.hpp"
#include "vecmax/vector.hpp"

namespace vecmax {

/// A point (x, y) of X × Y; x indexes the metric space.
template <class T>
struct ProductPoint {
    std::size_t x = 0;
    BasicVector<T> y;

    friend bool operator==(const ProductPoint& a, const ProductPoint& b) { return a.x == b.x && a.y == b.y; }

    std::string to_string() const { return "(" + std::to_string(x) + ", " + y.to_string() + ")"; }
};

/// A finite problem: metric space X, cones K ⊆ H, scaling Lambda, the finite set A ⊆ X × Y and
/// an optional lower bound y~ with P_Y(A) ⊆ y~ + H.
///
/// The constructor checks shapes only (dimensions, indices, nonempty A); the order-theoretic
/// hypotheses are checked by validate_instance.
template <class T>
class Instance {
public:
    Instance(MetricSpace<T> space, ConvexCone<T> k, ConvexCone<T> h, NormalFunction<T> l,
             std::vector<ProductPoint<T>> points, std::optional<BasicVector<T>> lower_bound = std::nullopt)
        : space_(std::move(space)),
          k_(std::move(k)),
          h_(std::move(h)),
          l_(std::move(l)),
          points_(std::move(points)),
          lower_bound_(std::move(lower_bound)) {
        if (points_.empty()) throw InvalidArgument("the set A must be nonempty");
        if (h_.dim() != k_.dim()) throw DimensionMismatch(k_.dim(), h_.dim());
        if (l_.dim() != k_.dim()) throw DimensionMismatch(k_.dim(), l_.dim());
        for (const auto& p : points_) {
            if (p.x >= space_.size()) throw IndexOutOfRange(p.x, space_.size());
            if (p.y.dim() != k_.dim()) throw DimensionMismatch(k_.dim(), p.y.dim());
        }
        if (lower_bound_ && lower_bound_->dim() != k_.dim()) {
            throw DimensionMismatch(k_.dim(), lower_bound_->dim());
        }
    }

    const MetricSpace<T>& space() const noexcept { return space_; }
    const ConvexCone<T>& cone_k() const noexcept { return k_; }
    const ConvexCone<T>& cone_h() const noexcept { return h_; }
    const NormalFunction<T>& scaling() const noexcept { return l_; }
    const std::vector<ProductPoint<T>>& points() const noexcept { return points_; }
    const ProductPoint<T>& point(std::size_t i) const {
        if (i >= points_.size()) throw IndexOutOfRange(i, points_.size());
        return points_[i];
    }
    std::size_t size() const noexcept { return points_.size(); }
    const std::optional<BasicVector<T>>& lower_bound() const noexcept { return lower_bound_; }
    std::size_t dim() const noexcept { return k_.dim(); }

    /// a ⪰ b  iff  Lambda(d(a.x, b.x)) <=_K a.y - b.y.
    bool geq(const ProductPoint<T>& a, const ProductPoint<T>& b) const {
        return k_.leq(l_.eval(space_.dist(a.x, b.x)), a.y - b.y);
    }
    bool geq(std::size_t i, std::size_t j) const { return geq(point(i), point(j)); }

    /// The semimetric e((x1, y1), (x2, y2)) = d(x1, x2); zero between distinct points that
    /// share x.
    T semimetric(const ProductPoint<T>& a, const ProductPoint<T>& b) const { return space_.dist(a.x, b.x); }

    /// Index of p in A, if present.
    std::optional<std::size_t> index_of(const ProductPoint<T>& p) const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i] == p) return i;
        }
        return std::nullopt;
    }

    /// Copy with every y shifted by -shift (the reduction to P_Y(A) ⊆ H).
    Instance translated(const BasicVector<T>& shift) const {
        auto pts = points_;
        for (auto& p : pts) p.y -= shift;
        std::optional<BasicVector<T>> lb;
        if (lower_bound_) lb = *lower_bound_ - shift;
        return Instance(space_, k_, h_, l_, std::move(pts), std::move(lb));
    }

private:
    MetricSpace<T> space_;
    ConvexCone<T> k_;
    ConvexCone<T> h_;
    NormalFunction<T> l_;
    std::vector<ProductPoint<T>> points_;
    std::optional<BasicVector<T>> lower_bound_;
};

template <class T>
bool product_geq(const Instance<T>& inst, const ProductPoint<T>& a, const ProductPoint<T>& b) {
    return inst.geq(a, b);
}

template <class T>
T semimetric_e(const Instance<T>& inst, const ProductPoint<T>& a, const ProductPoint<T>& b) {
    return inst.semimetric(a, b);
}

}  // namespace vecmax
