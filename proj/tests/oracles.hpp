#pragma once

// Brute-force references used by the tests. Nothing here calls the solver, gauge or verifier
// code under test; only plain containers and arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace oracle {

using Table = std::vector<std::vector<double>>;

/// Random integer edge weights in [1, wmax] closed under shortest paths: an exact metric.
inline Table random_metric(std::size_t n, std::mt19937_64& rng, int wmax = 9) {
    std::uniform_int_distribution<int> w(1, wmax);
    Table d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

/// Dyadic value in [lo, hi] with 1/16 resolution, so sums and differences stay exact.
inline double dyadic(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_int_distribution<long> u(static_cast<long>(lo * 16), static_cast<long>(hi * 16));
    return static_cast<double>(u(rng)) / 16.0;
}

struct Term {
    std::vector<double> k;
    double exp;
};

inline std::vector<double> scaling(const std::vector<Term>& terms, double t) {
    std::vector<double> v(terms.front().k.size(), 0.0);
    for (const auto& term : terms) {
        const double p = t == 0.0 ? 0.0 : std::pow(t, term.exp);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += term.k[i] * p;
    }
    return v;
}

/// a >= b in the product order with K the orthant: Lambda(d) <= a.y - b.y componentwise.
inline bool geq_orthant(const std::vector<Term>& terms, double d, const std::vector<double>& ya,
                        const std::vector<double>& yb) {
    const auto l = scaling(terms, d);
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] > ya[i] - yb[i]) return false;
    }
    return true;
}

/// Ekeland answer set: every x with f(start) >= f(x) + eps*d(start, x) and no x' != x with
/// f(x) >= f(x') + eps*d(x, x').
inline std::vector<std::size_t> ekeland_answers(const Table& d, const std::vector<double>& f, double eps,
                                                std::size_t start) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!(f[start] >= f[x] + eps * d[start][x])) continue;
        bool strict = true;
        for (std::size_t y = 0; y < f.size() && strict; ++y) {
            if (y != x && f[x] >= f[y] + eps * d[x][y]) strict = false;
        }
        if (strict) out.push_back(x);
    }
    return out;
}

/// Same answer set in integer arithmetic: integer distances, f in units of 1/16 (F = 16 f) and
/// eps = num/den, so f(a) >= f(b) + eps*d(a, b) reads den*F(a) >= den*F(b) + 16*num*d(a, b).
inline std::vector<std::size_t> ekeland_answers_exact(const Table& d, const std::vector<long long>& F, long long num,
                                                      long long den, std::size_t start) {
    auto geq = [&](std::size_t a, std::size_t b) {
        return den * F[a] >= den * F[b] + 16 * num * static_cast<long long>(d[a][b]);
    };
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < F.size(); ++x) {
        if (!geq(start, x)) continue;
        bool strict = true;
        for (std::size_t y = 0; y < F.size() && strict; ++y) {
            if (y != x && geq(x, y)) strict = false;
        }
        if (strict) out.push_back(x);
    }
    return out;
}

/// gamma over lex(2) for Lambda(t) = (0, 1)*t, on integer vectors: -1 flags y outside lex,
/// -2 flags +infinity, otherwise the value.
inline long lex01_gamma(long y0, long y1) {
    if (y0 < 0 || (y0 == 0 && y1 < 0)) return -1;
    if (y0 > 0) return -2;
    return y1;
}

/// Scan of s over a fine grid: the largest grid point with s*k <= y componentwise.
inline double grid_gamma_linear_orthant(const std::vector<double>& k, const std::vector<double>& y, double step,
                                        double s_hi) {
    double best = 0.0;
    for (double s = 0.0; s <= s_hi; s += step) {
        bool ok = true;
        for (std::size_t i = 0; i < k.size(); ++i) ok = ok && s * k[i] <= y[i];
        if (ok) best = s;
    }
    return best;
}

/// Runs a shell command and captures stdout and the exit status.
struct Captured {
    std::string out;
    int status = -1;
};

inline Captured capture(const std::string& cmd) {
    Captured c;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return c;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
    const int st = pclose(p);
    c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return c;
}

}  // namespace oracle
