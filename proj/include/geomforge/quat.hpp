#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geomforge {

using Rat = boost::multiprecision::cpp_rational;

/// Quaternion a + ib + jc + ijd over the rationals, with i^2 = j^2 = -1 and
/// ji = -ij. Arithmetic is exact; every nonzero element is invertible and
/// the norm a^2+b^2+c^2+d^2 is multiplicative. This is the one
/// non-commutative coefficient structure supported at desk scale.
struct Quat {
    Rat a, b, c, d;

    Quat() : a(0), b(0), c(0), d(0) {}
    Quat(Rat a_, Rat b_, Rat c_, Rat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    explicit Quat(long long n) : a(n), b(0), c(0), d(0) {}

    static Quat zero() { return Quat(); }
    static Quat one() { return Quat(1); }
    static Quat i() { return Quat(0, 1, 0, 0); }
    static Quat j() { return Quat(0, 0, 1, 0); }
    static Quat k() { return Quat(0, 0, 0, 1); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    friend Quat operator+(const Quat& x, const Quat& y) {
        return Quat(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
    }
    friend Quat operator-(const Quat& x, const Quat& y) {
        return Quat(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
    }
    Quat operator-() const { return Quat(-a, -b, -c, -d); }

    friend Quat operator*(const Quat& x, const Quat& y) {
        // (a1 + i b1 + j c1 + ij d1)(a2 + i b2 + j c2 + ij d2)
        return Quat(
            x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a);
    }

    Quat conj() const { return Quat(a, -b, -c, -d); }

    Rat norm() const { return a * a + b * b + c * c + d * d; }

    Quat inverse() const {
        if (is_zero()) throw std::domain_error("quaternion division by zero");
        Rat n = norm();
        Quat cj = conj();
        return Quat(cj.a / n, cj.b / n, cj.c / n, cj.d / n);
    }

    friend bool operator==(const Quat& x, const Quat& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Quat& x, const Quat& y) { return !(x == y); }
};

inline Rat quat_norm(const Quat& x) { return x.norm(); }

namespace detail {
inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}
} // namespace detail

/// "a+bi+cj+dk" with rational components "n/m"; zero terms are dropped.
inline std::string quat_literal(const Quat& x) {
    std::string out;
    auto term = [&out](const Rat& v, const char* unit) {
        if (v == 0) return;
        if (!out.empty() && v > 0) out += "+";
        out += detail::rat_str(v) + unit;
    };
    term(x.a, "");
    term(x.b, "i");
    term(x.c, "j");
    term(x.d, "k");
    if (out.empty()) out = "0";
    return out;
}

/// Parses the literal syntax produced by quat_literal ("a+bi+cj+dk",
/// rational components "n/m", any subset of terms, leading sign allowed).
inline Quat quat_parse(const std::string& text) {
    Quat out;
    std::size_t pos = 0;
    bool any = false;
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+') { ++pos; }
        else if (text[pos] == '-') { sign = -1; ++pos; }
        std::size_t start = pos;
        while (pos < text.size() && (isdigit(text[pos]) || text[pos] == '/')) ++pos;
        if (start == pos && pos < text.size() &&
            (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
            // bare unit like "i" or "-k"
        } else if (start == pos) {
            throw std::invalid_argument("bad quaternion literal: " + text);
        }
        std::string num = text.substr(start, pos - start);
        Rat value;
        if (num.empty()) value = 1;
        else {
            auto slash = num.find('/');
            if (slash == std::string::npos)
                value = Rat(boost::multiprecision::cpp_int(num));
            else
                value = Rat(boost::multiprecision::cpp_int(num.substr(0, slash)),
                            boost::multiprecision::cpp_int(num.substr(slash + 1)));
        }
        if (sign < 0) value = -value;
        char unit = ' ';
        if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k'))
            unit = text[pos++];
        switch (unit) {
            case 'i': out.b += value; break;
            case 'j': out.c += value; break;
            case 'k': out.d += value; break;
            default: out.a += value; break;
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("empty quaternion literal");
    return out;
}

} // namespace geomforge
