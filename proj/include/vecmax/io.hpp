#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vecmax/certificate.hpp"
#include "vecmax/cone.hpp"
#include "vecmax/error.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/instance.hpp"
#include "vecmax/law.hpp"
#include "vecmax/metric.hpp"
#include "vecmax/scaling.hpp"

namespace vecmax {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Unreadable or malformed input document. The message carries the location.
class ParseError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing key \"" + key + "\"");
    return *it;
}

/// Exact value of a decimal literal such as "-12.5e-3".
inline Rational parse_decimal(const std::string& text, const std::string& where) {
    using boost::multiprecision::cpp_int;
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    cpp_int mant = 0;
    long scale = 0;
    bool digits = false;
    bool dot = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            mant = mant * 10 + (ch - '0');
            digits = true;
            if (dot) --scale;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw ParseError(where + ": not a number: \"" + text + "\"");
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(text.substr(i), &used);
        } catch (const std::exception&) {
            throw ParseError(where + ": bad exponent in \"" + text + "\"");
        }
        if (std::labs(e) > 4096) throw ParseError(where + ": exponent out of range in \"" + text + "\"");
        scale += e;
        i += used;
    }
    if (i != text.size()) throw ParseError(where + ": trailing characters in \"" + text + "\"");
    cpp_int pow10 = 1;
    for (long k = 0; k < std::labs(scale); ++k) pow10 *= 10;
    Rational r = scale >= 0 ? Rational(mant * pow10) : Rational(mant, pow10);
    return neg ? Rational(-r) : r;
}

/// "p/q" or a decimal literal.
inline Rational parse_rational(const std::string& text, const std::string& where) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text, where);
    const Rational p = parse_decimal(text.substr(0, slash), where);
    const Rational q = parse_decimal(text.substr(slash + 1), where);
    if (q == 0) throw ParseError(where + ": zero denominator in \"" + text + "\"");
    return p / q;
}

}  // namespace detail

/// Scalars are JSON numbers or strings ("p/q", decimal literals). In exact mode a JSON number is
/// read from its shortest decimal form, so 2.9 becomes 29/10.
template <class T>
T scalar_from_json(const json& j, const std::string& where) {
    if constexpr (is_exact_v<T>) {
        if (j.is_number_integer() || j.is_number_unsigned()) return detail::parse_decimal(j.dump(), where);
        if (j.is_number_float()) {
            if (!std::isfinite(j.get<double>())) throw ParseError(where + ": non-finite number");
            return detail::parse_decimal(j.dump(), where);
        }
        if (j.is_string()) return detail::parse_rational(j.get<std::string>(), where);
    } else {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) return detail::parse_rational(j.get<std::string>(), where).template convert_to<double>();
    }
    throw ParseError(where + ": expected a number");
}

/// Doubles as numbers; rationals as integers when whole and small, else as "p/q" strings.
template <class T>
json scalar_to_json(const T& v) {
    if constexpr (is_exact_v<T>) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(v) == 1 && abs(numerator(v)) < boost::multiprecision::cpp_int(1) << 53) {
            return numerator(v).template convert_to<long long>();
        }
        return v.str();
    } else {
        return v;
    }
}

template <class T>
BasicVector<T> vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array");
    std::vector<T> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json<T>(j[i], where + "[" + std::to_string(i) + "]"));
    return BasicVector<T>(std::move(v));
}

template <class T>
json vector_to_json(const BasicVector<T>& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(scalar_to_json(v[i]));
    return a;
}

/// {"kind":"orthant","dim":n} | {"kind":"halfspaces","normals":[[...]]} | {"kind":"lex","dim":n},
/// with an optional membership "tol".
template <class T>
ConvexCone<T> cone_from_json(const json& j, const std::string& where) {
    const auto kind = detail::require(j, "kind", where).get<std::string>();
    const T tol = j.contains("tol") ? scalar_from_json<T>(j["tol"], where + ".tol") : T(0);
    if (kind == "orthant") return ConvexCone<T>::orthant(detail::require(j, "dim", where).get<std::size_t>(), tol);
    if (kind == "lex") return ConvexCone<T>::lex(detail::require(j, "dim", where).get<std::size_t>());
    if (kind == "halfspaces") {
        const auto& ns = detail::require(j, "normals", where);
        if (!ns.is_array()) throw ParseError(where + ".normals: expected an array");
        std::vector<BasicVector<T>> normals;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            normals.push_back(vector_from_json<T>(ns[i], where + ".normals[" + std::to_string(i) + "]"));
        }
        return ConvexCone<T>::halfspaces(std::move(normals), tol);
    }
    throw ParseError(where + ": unknown cone kind \"" + kind + "\"");
}

template <class T>
json cone_to_json(const ConvexCone<T>& c) {
    json j;
    j["kind"] = to_string(c.kind());
    if (c.kind() == ConeKind::halfspaces) {
        json ns = json::array();
        for (const auto& n : c.normals()) ns.push_back(vector_to_json(n));
        j["normals"] = ns;
    } else {
        j["dim"] = c.dim();
    }
    if (c.tolerance() != T(0)) j["tol"] = scalar_to_json(c.tolerance());
    return j;
}

/// {"type":"finite-matrix","d":[[...]]} | {"type":"points","coords":[[...]],"p":2|"inf"}.
template <class T>
MetricSpace<T> space_from_json(const json& j, const std::string& where) {
    const auto type = detail::require(j, "type", where).get<std::string>();
    if (type == "finite-matrix") {
        const auto& d = detail::require(j, "d", where);
        if (!d.is_array()) throw ParseError(where + ".d: expected an array of rows");
        std::vector<std::vector<T>> table;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!d[i].is_array()) throw ParseError(where + ".d[" + std::to_string(i) + "]: expected an array");
            std::vector<T> row;
            for (std::size_t k = 0; k < d[i].size(); ++k) {
                row.push_back(scalar_from_json<T>(d[i][k], where + ".d[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
            }
            table.push_back(std::move(row));
        }
        return MetricSpace<T>::matrix(std::move(table));
    }
    if (type == "points") {
        const auto& cs = detail::require(j, "coords", where);
        if (!cs.is_array()) throw ParseError(where + ".coords: expected an array");
        std::vector<BasicVector<T>> coords;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            coords.push_back(vector_from_json<T>(cs[i], where + ".coords[" + std::to_string(i) + "]"));
        }
        double p = 2.0;
        if (j.contains("p")) {
            if (j["p"].is_string() && j["p"].get<std::string>() == "inf") {
                p = std::numeric_limits<double>::infinity();
            } else if (j["p"].is_number()) {
                p = j["p"].get<double>();
            } else {
                throw ParseError(where + ".p: expected a number or \"inf\"");
            }
        }
        return MetricSpace<T>::points(std::move(coords), p);
    }
    throw ParseError(where + ": unknown space type \"" + type + "\"");
}

template <class T>
json space_to_json(const MetricSpace<T>& m) {
    json j;
    if (m.kind() == MetricKind::matrix) {
        j["type"] = "finite-matrix";
        json d = json::array();
        for (const auto& row : m.table()) {
            json r = json::array();
            for (const auto& e : row) r.push_back(scalar_to_json(e));
            d.push_back(r);
        }
        j["d"] = d;
    } else {
        j["type"] = "points";
        json cs = json::array();
        for (const auto& c : m.coords()) cs.push_back(vector_to_json(c));
        j["coords"] = cs;
        if (std::isinf(m.p())) {
            j["p"] = "inf";
        } else {
            j["p"] = m.p();
        }
    }
    return j;
}

/// {"terms":[{"k":[...],"exp":e}, ...]} or the shorthand {"linear":[...]}.
template <class T>
NormalFunction<T> lambda_from_json(const json& j, const std::string& where) {
    if (j.is_object() && j.contains("linear")) {
        return NormalFunction<T>::linear(vector_from_json<T>(j["linear"], where + ".linear"));
    }
    const auto& ts = detail::require(j, "terms", where);
    if (!ts.is_array()) throw ParseError(where + ".terms: expected an array");
    std::vector<PowerTerm<T>> terms;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string w = where + ".terms[" + std::to_string(i) + "]";
        const auto& e = detail::require(ts[i], "exp", w);
        if (!e.is_number()) throw ParseError(w + ".exp: expected a number");
        terms.push_back({vector_from_json<T>(detail::require(ts[i], "k", w), w + ".k"), e.get<double>()});
    }
    return NormalFunction<T>(std::move(terms));
}

template <class T>
json lambda_to_json(const NormalFunction<T>& l) {
    json ts = json::array();
    for (const auto& t : l.terms()) ts.push_back(json{{"k", vector_to_json(t.k)}, {"exp", t.exponent}});
    return json{{"terms", ts}};
}

inline void check_schema(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    if (j.contains("schema") && !(j["schema"].is_number_integer() && j["schema"].get<int>() == kSchemaVersion)) {
        throw ParseError(where + ": unsupported schema " + j["schema"].dump() + " (expected " +
                         std::to_string(kSchemaVersion) + ")");
    }
}

template <class T>
ProductPoint<T> point_from_json(const json& j, const std::string& where) {
    const auto& x = detail::require(j, "x", where);
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0)) {
        throw ParseError(where + ".x: expected a nonnegative integer");
    }
    return {x.get<std::size_t>(), vector_from_json<T>(detail::require(j, "y", where), where + ".y")};
}

template <class T>
json point_to_json(const ProductPoint<T>& p) {
    return json{{"x", p.x}, {"y", vector_to_json(p.y)}};
}

/// {"schema":1,"space":...,"coneK":...,"coneH":...,"lambda":...,"A":[{"x":0,"y":[...]}],
///  "lower_bound":[...]?}
template <class T>
Instance<T> instance_from_json(const json& j) {
    check_schema(j, "instance");
    auto space = space_from_json<T>(detail::require(j, "space", "instance"), "space");
    auto k = cone_from_json<T>(detail::require(j, "coneK", "instance"), "coneK");
    auto h = cone_from_json<T>(detail::require(j, "coneH", "instance"), "coneH");
    auto l = lambda_from_json<T>(detail::require(j, "lambda", "instance"), "lambda");
    const auto& a = detail::require(j, "A", "instance");
    if (!a.is_array()) throw ParseError("A: expected an array");
    std::vector<ProductPoint<T>> pts;
    for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(point_from_json<T>(a[i], "A[" + std::to_string(i) + "]"));
    std::optional<BasicVector<T>> lb;
    if (j.contains("lower_bound") && !j["lower_bound"].is_null()) lb = vector_from_json<T>(j["lower_bound"], "lower_bound");
    return Instance<T>(std::move(space), std::move(k), std::move(h), std::move(l), std::move(pts), std::move(lb));
}

template <class T>
json instance_to_json(const Instance<T>& inst) {
    json j;
    j["schema"] = kSchemaVersion;
    j["space"] = space_to_json(inst.space());
    j["coneK"] = cone_to_json(inst.cone_k());
    j["coneH"] = cone_to_json(inst.cone_h());
    j["lambda"] = lambda_to_json(inst.scaling());
    json a = json::array();
    for (const auto& p : inst.points()) a.push_back(point_to_json(p));
    j["A"] = a;
    if (inst.lower_bound()) j["lower_bound"] = vector_to_json(*inst.lower_bound());
    return j;
}

/// Input of the scalar variational principle: {"schema":1,"space":...,"f":[...],"eps":e}.
template <class T>
struct EkelandInput {
    MetricSpace<T> space;
    std::vector<T> f;
    std::optional<T> eps;
};

template <class T>
EkelandInput<T> ekeland_from_json(const json& j) {
    check_schema(j, "ekeland input");
    auto space = space_from_json<T>(detail::require(j, "space", "ekeland input"), "space");
    const auto& fj = detail::require(j, "f", "ekeland input");
    if (!fj.is_array()) throw ParseError("f: expected an array");
    std::vector<T> f;
    for (std::size_t i = 0; i < fj.size(); ++i) f.push_back(scalar_from_json<T>(fj[i], "f[" + std::to_string(i) + "]"));
    std::optional<T> eps;
    if (j.contains("eps")) eps = scalar_from_json<T>(j["eps"], "eps");
    return {std::move(space), std::move(f), eps};
}

template <class T>
json extended_to_json(const ExtendedReal<T>& e) {
    json j;
    j["tag"] = to_string(e.tag);
    if (e.is_finite()) {
        j["lo"] = scalar_to_json(e.lo);
        j["hi"] = scalar_to_json(e.hi);
    }
    return j;
}

/// Infinite margins (no sample recorded, or an infinite violation) are written as strings.
inline json margin_to_json(double m) {
    if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
    if (std::isnan(m)) return nullptr;
    return m;
}

inline json law_check_to_json(const LawCheck& c) {
    json j;
    j["name"] = c.law;
    j["pass"] = c.pass;
    j["method"] = to_string(c.method);
    j["samples"] = c.samples;
    j["worst_margin"] = margin_to_json(c.worst_margin);
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

inline json verdict_to_json(const CheckVerdict& v) {
    json w = json::array();
    for (const auto& s : v.witnesses) w.push_back(s);
    return json{{"name", v.name}, {"pass", v.pass}, {"witnesses", w}};
}

template <class T>
json indexed_to_json(const IndexedPoint<T>& p) {
    return json{{"index", p.index}, {"x", p.point.x}, {"y", vector_to_json(p.point.y)}};
}

template <class T>
IndexedPoint<T> indexed_from_json(const json& j, const std::string& where) {
    const auto& idx = detail::require(j, "index", where);
    if (!idx.is_number_unsigned() && !(idx.is_number_integer() && idx.get<long long>() >= 0)) {
        throw ParseError(where + ".index: expected a nonnegative integer");
    }
    return {idx.get<std::size_t>(), point_from_json<T>(j, where)};
}

template <class T>
json certificate_to_json(const MaximalCertificate<T>& c) {
    json j;
    j["schema"] = kSchemaVersion;
    j["mode"] = to_string(c.mode);
    j["engine"] = c.engine;
    j["start"] = indexed_to_json(c.start);
    j["answer"] = indexed_to_json(c.answer);
    json chain = json::array();
    for (const auto& p : c.chain) chain.push_back(indexed_to_json(p));
    j["chain"] = chain;
    json checks = json::array();
    for (const auto& v : c.checks) checks.push_back(verdict_to_json(v));
    j["checks"] = checks;
    j["valid"] = c.valid();
    return j;
}

/// Reads start, answer, mode, engine and chain. Recorded checks are ignored: a loaded
/// certificate is re-verified, never trusted.
template <class T>
MaximalCertificate<T> certificate_from_json(const json& j) {
    check_schema(j, "certificate");
    const auto mode_s = detail::require(j, "mode", "certificate").get<std::string>();
    Mode mode;
    if (mode_s == "t2") {
        mode = Mode::t2;
    } else if (mode_s == "t3") {
        mode = Mode::t3;
    } else {
        throw ParseError("certificate.mode: expected \"t2\" or \"t3\"");
    }
    const auto& cj = detail::require(j, "chain", "certificate");
    if (!cj.is_array()) throw ParseError("certificate.chain: expected an array");
    std::vector<IndexedPoint<T>> chain;
    for (std::size_t i = 0; i < cj.size(); ++i) {
        chain.push_back(indexed_from_json<T>(cj[i], "certificate.chain[" + std::to_string(i) + "]"));
    }
    return {indexed_from_json<T>(detail::require(j, "start", "certificate"), "certificate.start"),
            indexed_from_json<T>(detail::require(j, "answer", "certificate"), "certificate.answer"),
            mode,
            j.contains("engine") ? j["engine"].get<std::string>() : std::string("external"),
            std::move(chain),
            {}};
}

/// Parses a JSON document; syntax errors report the byte offset.
inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

}  // namespace vecmax
