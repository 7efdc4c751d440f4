#include "chowstab/rational.hpp"

#include <cctype>
#include <ostream>

namespace chowstab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text, const std::string& where) {
    auto fail = [&]() -> Rational {
        throw ParseError(where + (where.empty() ? "" : ": ") + "malformed rational \"" +
                         std::string(text) + "\"");
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) return fail();

    std::string_view num = body;
    std::string_view den;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
        if (!all_digits(den)) return fail();
    }
    if (!all_digits(num)) return fail();

    BigInt numerator{std::string(num)};
    if (negative) numerator = -numerator;
    if (den.empty()) return Rational(numerator);
    BigInt denominator{std::string(den)};
    if (sgn(denominator) == 0) {
        throw ParseError(where + (where.empty() ? "" : ": ") + "zero denominator in \"" +
                         std::string(text) + "\"");
    }
    return Rational(numerator, denominator);
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt int_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace chowstab
