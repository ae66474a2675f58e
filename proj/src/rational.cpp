#include "qdt/rational.hpp"

#include "qdt/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <ostream>

namespace qdt {

namespace {

wide_int gcd_wide(wide_int a, wide_int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const wide_int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(wide_int v) {
    return v >= std::numeric_limits<std::int64_t>::min() + 1 && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = from_wide(num, den);
}

Rational Rational::from_wide(wide_int num, wide_int den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const wide_int g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits(num) || !fits(den)) throw DomainError("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty rational literal");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    wide_int mantissa = 0;
    int scale = 0;
    bool digits = false;
    bool after_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.' && !after_point) {
            after_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
            mantissa = mantissa * 10 + (c - '0');
            if (after_point) ++scale;
            if (mantissa > (static_cast<wide_int>(1) << 100)) throw DomainError("rational literal too long: " + std::string(text));
        } else {
            break;
        }
    }
    if (!digits) throw DomainError("malformed rational literal: " + std::string(text));

    int exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw DomainError("malformed rational literal: " + std::string(text));
        ++pos;
        const char* first = text.data() + pos;
        if (pos < text.size() && text[pos] == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), exponent);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw DomainError("malformed rational exponent: " + std::string(text));
    }

    const int shift = exponent - scale;
    wide_int num = negative ? -mantissa : mantissa;
    wide_int den = 1;
    if (shift > 36 || shift < -36) throw DomainError("rational literal out of range: " + std::string(text));
    for (int i = 0; i < shift; ++i) num *= 10;
    for (int i = 0; i < -shift; ++i) den *= 10;
    return from_wide(num, den);
}

Rational Rational::from_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw DomainError("cannot format double");
    return parse(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<wide_int>(num_), den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    return *this = from_wide(static_cast<wide_int>(num_) * rhs.den_ + static_cast<wide_int>(rhs.num_) * den_,
                             static_cast<wide_int>(den_) * rhs.den_);
}

Rational& Rational::operator-=(const Rational& rhs) {
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
    return *this = from_wide(static_cast<wide_int>(num_) * rhs.num_, static_cast<wide_int>(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw DomainError("rational division by zero");
    return *this = from_wide(static_cast<wide_int>(num_) * rhs.den_, static_cast<wide_int>(den_) * rhs.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return static_cast<wide_int>(a.num_) * b.den_ <=> static_cast<wide_int>(b.num_) * a.den_;
}

Rational abs(const Rational& r) {
    return r.num() < 0 ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace qdt
