#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "vecmax/error.hpp"

namespace vecmax {

/// Exact rational scalar used by exact mode.
using Rational = boost::multiprecision::cpp_rational;

/// Arithmetic policy for a scalar type.
///
/// `double` is the float mode: powers and roots are available, comparisons may
/// carry a tolerance. `Rational` is the exact mode: only operations that stay
/// inside the rationals are allowed and everything else throws.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "double";

    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    static bool is_finite(double v) { return std::isfinite(v); }

    static double pow(double t, double exponent) {
        if (exponent == 1.0) return t;
        if (t == 0.0) return 0.0;
        return std::pow(t, exponent);
    }

    /// p-th root of a nonnegative sum, used by p-norm metrics.
    static double root(double s, double p) {
        if (p == 1.0) return s;
        if (p == 2.0) return std::sqrt(s);
        return std::pow(s, 1.0 / p);
    }

    /// Shortest decimal that reads back to the same double.
    static std::string to_string(double v) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";

    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw InvalidArgument("non-finite value in exact mode");
        return Rational(v);
    }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static bool is_finite(const Rational&) { return true; }

    static Rational pow(const Rational& t, double exponent) {
        if (exponent == 1.0 || t == 0 || t == 1) return t;
        throw InvalidArgument("exact mode supports only unit exponents (got " +
                              std::to_string(exponent) + ")");
    }

    static Rational root(const Rational& s, double p) {
        if (p == 1.0) return s;
        throw InvalidArgument("exact mode supports only p = 1 or p = inf for point metrics");
    }

    static std::string to_string(const Rational& v) { return v.str(); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
T abs_value(const T& v) {
    return v < T(0) ? T(-v) : v;
}

}  // namespace vecmax
