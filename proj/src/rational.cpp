// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/rational.hpp"

#include <cctype>
#include <ostream>

namespace pam {

Rational::Rational(const Integer& n, const Integer& d) {
    if (sgn(d) == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw Error("reciprocal of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw Error("negative power of zero");
        return Rational(0);
    }
    mpz_class n, d;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
    return e > 0 ? Rational(n, d) : Rational(d, n);
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw Error("cannot parse rational from '" + text + "'");

    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw Error("cannot parse rational from '" + text + "'");
        Integer den(q);
        if (sgn(den) == 0) throw Error("zero denominator in '" + text + "'");
        out = Rational(Integer(p), den);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        if (!all_digits(ip) || !all_digits(fp))
            throw Error("cannot parse rational from '" + text + "'");
        Integer den(1);
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        out = Rational(Integer(ip) * den + Integer(fp), den);
    } else {
        if (!all_digits(s)) throw Error("cannot parse rational from '" + text + "'");
        out = Rational(Integer(s));
    }
    return negative ? -out : out;
}

std::string Rational::to_string() const {
    std::string s = v_.get_num().get_str();
    if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
    return s;
}

std::string Rational::to_decimal(int digits) const {
    if (digits < 0) digits = 0;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // Round |v| * 10^digits to the nearest integer, ties away from zero.
    Integer n = ::abs(num()) * scale * 2 + den();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), Integer(den() * 2).get_mpz_t());
    std::string body = q.get_str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, static_cast<size_t>(digits) - body.size() + 1, '0');
    std::string out;
    if (sign() < 0 && q != 0) out += "-";
    if (digits == 0) {
        out += body;
    } else {
        out += body.substr(0, body.size() - digits);
        out += ".";
        out += body.substr(body.size() - digits);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace pam
