#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vecmax/error.hpp"
#include "vecmax/scalar.hpp"
#include "vecmax/vector.hpp"

namespace vecmax {

enum class MetricKind { matrix, points };

/// One violated metric axiom found by metric_validate.
struct MetricViolation {
    enum class Axiom { diagonal, negative, symmetry, triangle };
    Axiom axiom;
    std::size_t i = 0, j = 0, k = 0;  // triangle: d(i,k) > d(i,j) + d(j,k)
    std::string message;
};

inline const char* to_string(MetricViolation::Axiom a) {
    switch (a) {
        case MetricViolation::Axiom::diagonal: return "diagonal";
        case MetricViolation::Axiom::negative: return "negative";
        case MetricViolation::Axiom::symmetry: return "symmetry";
        case MetricViolation::Axiom::triangle: return "triangle";
    }
    return "?";
}

struct MetricReport {
    bool valid = true;
    bool analytic = false;  // points kind: axioms hold by the norm, nothing scanned
    std::vector<MetricViolation> violations;
};

/// Finite metric space X = {0, ..., n-1}: an explicit distance table, or points of R^m under
/// a p-norm (p in [1, inf]; p = inf is encoded as +infinity).
template <class T>
class MetricSpace {
public:
    static MetricSpace matrix(std::vector<std::vector<T>> table) {
        if (table.empty()) throw InvalidArgument("metric space must have at least one point");
        for (const auto& row : table) {
            if (row.size() != table.size()) throw InvalidArgument("distance table must be square");
            for (const auto& e : row) {
                if (!ScalarTraits<T>::is_finite(e)) throw InvalidArgument("distance is not finite");
            }
        }
        MetricSpace m;
        m.kind_ = MetricKind::matrix;
        m.table_ = std::move(table);
        return m;
    }

    static MetricSpace points(std::vector<BasicVector<T>> coords, double p = 2.0) {
        if (coords.empty()) throw InvalidArgument("metric space must have at least one point");
        if (!(p >= 1.0)) throw InvalidArgument("norm exponent p must lie in [1, inf]");
        for (const auto& c : coords) coords.front().check_dim(c);
        if constexpr (is_exact_v<T>) {
            if (p != 1.0 && !std::isinf(p)) {
                throw InvalidArgument("exact mode supports only p = 1 or p = inf for point metrics");
            }
        }
        MetricSpace m;
        m.kind_ = MetricKind::points;
        m.coords_ = std::move(coords);
        m.p_ = p;
        return m;
    }

    MetricKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept {
        return kind_ == MetricKind::matrix ? table_.size() : coords_.size();
    }
    double p() const noexcept { return p_; }
    const std::vector<std::vector<T>>& table() const noexcept { return table_; }
    const std::vector<BasicVector<T>>& coords() const noexcept { return coords_; }

    T dist(std::size_t i, std::size_t j) const {
        const std::size_t n = size();
        if (i >= n) throw IndexOutOfRange(i, n);
        if (j >= n) throw IndexOutOfRange(j, n);
        if (kind_ == MetricKind::matrix) return table_[i][j];
        if (i == j) return T(0);
        const auto diff = coords_[i] - coords_[j];
        if (std::isinf(p_)) {
            T m(0);
            for (std::size_t c = 0; c < diff.dim(); ++c) m = std::max(m, abs_value(diff[c]));
            return m;
        }
        T acc(0);
        for (std::size_t c = 0; c < diff.dim(); ++c) {
            acc += p_ == 1.0 ? abs_value(diff[c]) : ScalarTraits<T>::pow(abs_value(diff[c]), p_);
        }
        return ScalarTraits<T>::root(acc, p_);
    }

    /// Exhaustive axiom scan for the matrix kind (O(n^3)); `max_violations` bounds the list.
    MetricReport validate(std::size_t max_violations = 64) const {
        MetricReport rep;
        if (kind_ == MetricKind::points) {
            rep.analytic = true;
            return rep;
        }
        const std::size_t n = size();
        auto add = [&](MetricViolation v) {
            rep.valid = false;
            if (rep.violations.size() < max_violations) rep.violations.push_back(std::move(v));
        };
        using S = ScalarTraits<T>;
        for (std::size_t i = 0; i < n; ++i) {
            if (table_[i][i] != T(0)) {
                add({MetricViolation::Axiom::diagonal, i, i, i,
                     "d(" + std::to_string(i) + "," + std::to_string(i) + ") = " + S::to_string(table_[i][i])});
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (table_[i][j] < T(0)) {
                    add({MetricViolation::Axiom::negative, i, j, j,
                         "d(" + std::to_string(i) + "," + std::to_string(j) + ") < 0"});
                }
                if (j > i && table_[i][j] != table_[j][i]) {
                    add({MetricViolation::Axiom::symmetry, i, j, j,
                         "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" +
                             std::to_string(j) + "," + std::to_string(i) + ")"});
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (table_[i][k] > table_[i][j] + table_[j][k]) {
                        add({MetricViolation::Axiom::triangle, i, j, k,
                             "d(" + std::to_string(i) + "," + std::to_string(k) + ") = " +
                                 S::to_string(table_[i][k]) + " > d(" + std::to_string(i) + "," +
                                 std::to_string(j) + ") + d(" + std::to_string(j) + "," +
                                 std::to_string(k) + ")"});
                    }
                }
            }
        }
        return rep;
    }

    template <class U>
    MetricSpace<U> convert() const {
        if (kind_ == MetricKind::points) {
            std::vector<BasicVector<U>> c;
            for (const auto& v : coords_) c.push_back(v.template convert<U>());
            return MetricSpace<U>::points(std::move(c), p_);
        }
        std::vector<std::vector<U>> t;
        for (const auto& row : table_) {
            auto& out = t.emplace_back();
            for (const auto& e : row) out.push_back(ScalarTraits<U>::from_double(ScalarTraits<T>::to_double(e)));
        }
        return MetricSpace<U>::matrix(std::move(t));
    }

private:
    MetricSpace() = default;

    MetricKind kind_ = MetricKind::matrix;
    std::vector<std::vector<T>> table_;
    std::vector<BasicVector<T>> coords_;
    double p_ = 2.0;
};

template <class T>
T metric_dist(const MetricSpace<T>& x, std::size_t i, std::size_t j) {
    return x.dist(i, j);
}

template <class T>
MetricReport metric_validate(const MetricSpace<T>& x) {
    return x.validate();
}

}  // namespace vecmax
