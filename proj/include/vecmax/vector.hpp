#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "vecmax/error.hpp"
#include "vecmax/scalar.hpp"

namespace vecmax {

/// A point of the finite-dimensional space the cones live in.
///
/// Dimension is fixed at construction and is at least one; in float mode every
/// entry must be finite.
template <class T>
class BasicVector {
public:
    using value_type = T;

    explicit BasicVector(std::size_t dim) : entries_(dim, T(0)) {
        if (dim == 0) throw InvalidArgument("vector dimension must be positive");
    }

    explicit BasicVector(std::vector<T> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw InvalidArgument("vector dimension must be positive");
        for (const auto& e : entries_) {
            if (!ScalarTraits<T>::is_finite(e)) throw InvalidArgument("vector entry is not finite");
        }
    }

    BasicVector(std::initializer_list<T> entries) : BasicVector(std::vector<T>(entries)) {}

    static BasicVector zero(std::size_t dim) { return BasicVector(dim); }

    static BasicVector unit(std::size_t dim, std::size_t i) {
        BasicVector v(dim);
        v.entries_.at(i) = T(1);
        return v;
    }

    std::size_t dim() const noexcept { return entries_.size(); }
    const T& operator[](std::size_t i) const { return entries_[i]; }
    T& operator[](std::size_t i) { return entries_[i]; }
    std::span<const T> entries() const noexcept { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const T& e) { return e == T(0); });
    }

    BasicVector& operator+=(const BasicVector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    BasicVector& operator-=(const BasicVector& o) {
        check_dim(o);
        for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    BasicVector& operator*=(const T& a) {
        for (auto& e : entries_) e *= a;
        return *this;
    }

    friend BasicVector operator+(BasicVector a, const BasicVector& b) { return a += b; }
    friend BasicVector operator-(BasicVector a, const BasicVector& b) { return a -= b; }
    friend BasicVector operator*(const T& s, BasicVector a) { return a *= s; }
    friend BasicVector operator-(BasicVector a) {
        for (auto& e : a.entries_) e = -e;
        return a;
    }
    friend bool operator==(const BasicVector& a, const BasicVector& b) {
        return a.entries_ == b.entries_;
    }

    void check_dim(const BasicVector& o) const {
        if (o.dim() != dim()) throw DimensionMismatch(dim(), o.dim());
    }

    template <class U>
    BasicVector<U> convert() const {
        std::vector<U> out;
        out.reserve(dim());
        for (const auto& e : entries_) {
            out.push_back(ScalarTraits<U>::from_double(ScalarTraits<T>::to_double(e)));
        }
        return BasicVector<U>(std::move(out));
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) s += ", ";
            s += ScalarTraits<T>::to_string(entries_[i]);
        }
        return s + ")";
    }

private:
    std::vector<T> entries_;
};

template <class T>
T dot(const BasicVector<T>& a, const BasicVector<T>& b) {
    a.check_dim(b);
    T acc(0);
    for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
    return acc;
}

using Vector = BasicVector<double>;
using RationalVector = BasicVector<Rational>;

}  // namespace vecmax
