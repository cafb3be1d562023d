#include "polyflow/rational.hpp"

#include <cctype>
#include <cstdio>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// GMP string parsing treats a leading zero as an octal prefix; strip it.
Integer from_digits(std::string_view s) {
    std::size_t first = 0;
    while (first + 1 < s.size() && s[first] == '0') ++first;
    return Integer{std::string(s.substr(first))};
}

}  // namespace

Rational parse_rational(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw Error("empty rational literal");

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
        if (text.empty()) throw Error("sign with no digits in rational literal");
    }

    const auto slash = text.find('/');
    const auto dot = text.find('.');
    Rational magnitude;
    if (slash != std::string_view::npos) {
        const std::string_view num = text.substr(0, slash);
        const std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw Error("malformed fraction literal: " + std::string(text));
        }
        const Integer q = from_digits(den);
        if (q == 0) throw Error("zero denominator in rational literal: " + std::string(text));
        const Integer p = from_digits(num);
        magnitude = Rational(p, q);
    } else if (dot != std::string_view::npos) {
        const std::string_view whole = text.substr(0, dot);
        const std::string_view frac = text.substr(dot + 1);
        if ((whole.empty() && frac.empty()) ||
            (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw Error("malformed decimal literal: " + std::string(text));
        }
        std::string digits = std::string(whole) + std::string(frac);
        if (digits.empty()) throw Error("malformed decimal literal: " + std::string(text));
        Integer den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const Integer p = from_digits(digits);
        magnitude = Rational(p, den);
    } else {
        if (!all_digits(text)) throw Error("malformed integer literal: " + std::string(text));
        const Integer p = from_digits(text);
        magnitude = Rational(p);
    }
    return negative ? Rational(-magnitude) : magnitude;
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_decimal_string(const Rational& value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", to_double(value));
    return buffer;
}

Rational rational_from_double(double value) {
    Rational out;
    mpq_set_d(out.backend().data(), value);
    return out;
}

Integer rational_ceil(const Rational& value) {
    Integer num = numerator(value);
    Integer den = denominator(value);
    Integer q = num / den;           // truncates toward zero
    if (q * den < num) q += 1;       // positive remainder: round up
    return q;
}

Integer ceil_sqrt(const Rational& value) {
    if (value < 0) throw Error("ceil_sqrt of negative value");
    if (value == 0) return 0;
    Integer k = sqrt(rational_ceil(value));  // integer floor sqrt
    while (k * k < value) k += 1;
    return k;
}

std::string to_string(const RVector& v) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(v(i));
    }
    out += ")";
    return out;
}

RVector make_rvector(std::initializer_list<Rational> values) {
    RVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const auto& x : values) v(i++) = x;
    return v;
}

RMatrix make_rmatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Eigen::Index n = 0;
    for (const auto& r : rows) {
        n = static_cast<Eigen::Index>(r.size());
        break;
    }
    RMatrix a(m, n);
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        if (static_cast<Eigen::Index>(r.size()) != n) {
            throw DimensionMismatch("ragged initializer for RMatrix");
        }
        Eigen::Index j = 0;
        for (const auto& x : r) a(i, j++) = x;
        ++i;
    }
    return a;
}

std::int64_t Sampler::int_in(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw Error("Sampler::int_in: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection sampling keeps the distribution uniform and the stream
    // reproducible across platforms.
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

Rational Sampler::rational_in(const Rational& lo, const Rational& hi,
                              std::int64_t denominator) {
    const std::int64_t k = int_in(0, denominator);
    return lo + (hi - lo) * Rational(k, denominator);
}

RVector Sampler::point_in_box(int dim, const Rational& half_width,
                              std::int64_t denominator) {
    RVector p(dim);
    for (int i = 0; i < dim; ++i) {
        p(i) = rational_in(-half_width, half_width, denominator);
    }
    return p;
}

}  // namespace polyflow
