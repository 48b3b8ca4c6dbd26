// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/number_theory.hpp"

#include <algorithm>
#include <numeric>

namespace pam {

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for n < 2^64 with the standard 12-base set.
bool mr_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

constexpr unsigned long kWidePrimeTrialBound = 1ul << 24;

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p() || mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        u64 v = 0;
        if (n.fits_ulong_p()) {
            v = n.get_ui();
        } else {
            Integer hi = n >> 32, lo = n & Integer((1ul << 32) - 1);
            v = (u64(hi.get_ui()) << 32) | lo.get_ui();
        }
        return mr_prime_u64(v);
    }
    // Beyond 64 bits fall back to trial division with a hard cap.
    Integer d(3);
    if (n % 2 == 0) return false;
    while (d * d <= n) {
        if (n % d == 0) return false;
        d += 2;
        if (d > kWidePrimeTrialBound)
            throw ResourceLimit("primality test exceeded trial division bound");
    }
    return true;
}

Valuation padic_valuation(const Rational& x, const Integer& p) {
    if (!is_prime(p)) throw NotPrime(p.get_str() + " is not prime");
    if (x.is_zero()) return Valuation::infinity();
    Integer tmp;
    long vn = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), Integer(::abs(x.num())).get_mpz_t(), p.get_mpz_t()));
    long vd =
        static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.den().get_mpz_t(), p.get_mpz_t()));
    return Valuation::of(vn - vd);
}

Rational FactoredRational::reconstruct() const {
    if (sign == 0) return Rational(0);
    Rational r(sign);
    for (const auto& [p, e] : exponents) r *= Rational(p).pow(e);
    return r;
}

namespace {

// Appends the factorization of n >= 1 into acc with multiplier `mult`.
void factor_integer(Integer n, long mult, std::map<Integer, long>& acc,
                    unsigned long trial_bound) {
    if (n == 1) return;
    Integer tmp;
    long e = static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), Integer(2).get_mpz_t()));
    if (e > 0) acc[2] += mult * e;
    n = tmp;
    Integer d(3);
    while (n > 1 && d * d <= n) {
        if (d > trial_bound) break;
        e = static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t()));
        if (e > 0) {
            acc[d] += mult * e;
            n = tmp;
        }
        d += 2;
    }
    if (n > 1) {
        // Either n has no factor <= sqrt(n) (so it is prime), or trial
        // division gave up early and the cofactor must itself be prime.
        if (d * d > n || is_prime(n)) {
            acc[n] += mult;
        } else {
            throw ResourceLimit("prime factor exceeds the configured bound while factoring");
        }
    }
}

}  // namespace

FactoredRational factor(const Rational& x, unsigned long trial_bound) {
    FactoredRational out;
    if (x.is_zero()) {
        out.sign = 0;
        return out;
    }
    out.sign = x.sign();
    factor_integer(::abs(x.num()), 1, out.exponents, trial_bound);
    factor_integer(x.den(), -1, out.exponents, trial_bound);
    for (auto it = out.exponents.begin(); it != out.exponents.end();)
        it = it->second == 0 ? out.exponents.erase(it) : std::next(it);
    return out;
}

std::optional<std::pair<long, long>> mult_dependent(const Rational& q1, const Rational& q2) {
    if (q1 <= Rational(1) || q2 <= Rational(1))
        throw PreconditionViolated("mult_dependent requires both arguments > 1");
    FactoredRational f1 = factor(q1), f2 = factor(q2);
    if (f1.exponents.size() != f2.exponents.size()) return std::nullopt;
    for (const auto& [p, e] : f1.exponents)
        if (f2.exponents.find(p) == f2.exponents.end()) return std::nullopt;

    // Need a*e_p == b*f_p for every prime p, with a, b > 0 minimal.
    auto it = f1.exponents.begin();
    long e0 = it->second;
    long g0 = f2.exponents.at(it->first);
    if ((e0 > 0) != (g0 > 0)) return std::nullopt;
    long a = std::abs(g0), b = std::abs(e0);
    long g = std::gcd(a, b);
    a /= g;
    b /= g;
    for (const auto& [p, e] : f1.exponents) {
        long f = f2.exponents.at(p);
        if (static_cast<long long>(a) * e != static_cast<long long>(b) * f) return std::nullopt;
    }
    return std::make_pair(a, b);
}

bool MultSolutionSet::contains(long n, long m) const {
    switch (kind) {
        case Kind::all:
            return n >= 0 && m >= 0;
        case Kind::finite:
            return std::find(points.begin(), points.end(), ExponentPair{n, m}) != points.end();
        case Kind::family: {
            if (n < base.n || m < base.m) return false;
            long dn = n - base.n, dm = m - base.m;
            if (step.n == 0 && step.m == 0) return dn == 0 && dm == 0;
            if (step.n == 0) return dn == 0 && dm % step.m == 0;
            if (step.m == 0) return dm == 0 && dn % step.n == 0;
            return dn % step.n == 0 && dm % step.m == 0 && dn / step.n == dm / step.m;
        }
    }
    return false;
}

std::optional<ExponentPair> MultSolutionSet::minimal() const {
    switch (kind) {
        case Kind::all:
            return ExponentPair{0, 0};
        case Kind::family:
            return base;
        case Kind::finite:
            if (points.empty()) return std::nullopt;
            return points.front();
    }
    return std::nullopt;
}

namespace {

struct LinEq {
    long a, b, c;  // a*m - b*n = c
};

long floor_div(long num, long den) {
    long q = num / den, r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}
long ceil_div(long num, long den) { return -floor_div(-num, den); }

// Extended gcd: returns g and u, v with a*u + b*v = g (a, b not both 0).
long ext_gcd(long a, long b, long& u, long& v) {
    if (b == 0) {
        u = a >= 0 ? 1 : -1;
        v = 0;
        return std::abs(a);
    }
    long u1, v1;
    long g = ext_gcd(b, a % b, u1, v1);
    u = v1;
    v = u1 - (a / b) * v1;
    return g;
}

MultSolutionSet finite_set(std::vector<ExponentPair> pts) {
    std::sort(pts.begin(), pts.end(), [](const ExponentPair& x, const ExponentPair& y) {
        return x.n != y.n ? x.n < y.n : x.m < y.m;
    });
    MultSolutionSet s;
    s.kind = MultSolutionSet::Kind::finite;
    s.points = std::move(pts);
    return s;
}

}  // namespace

MultSolutionSet solve_mult_relation(const Rational& q0, const Rational& q1, const Rational& q2) {
    if (q0 <= Rational(0) || q1 <= Rational(0) || q2 <= Rational(0))
        throw PreconditionViolated("solve_mult_relation requires positive inputs");
    FactoredRational f0 = factor(q0), f1 = factor(q1), f2 = factor(q2);

    std::vector<LinEq> eqs;
    auto valuation = [](const FactoredRational& f, const Integer& p) -> long {
        auto it = f.exponents.find(p);
        return it == f.exponents.end() ? 0 : it->second;
    };
    std::map<Integer, int> primes;
    for (const auto& [p, e] : f0.exponents) primes[p] = 1;
    for (const auto& [p, e] : f1.exponents) primes[p] = 1;
    for (const auto& [p, e] : f2.exponents) primes[p] = 1;
    for (const auto& [p, unused] : primes) {
        LinEq eq{valuation(f1, p), valuation(f2, p), valuation(f0, p)};
        if (eq.a == 0 && eq.b == 0) {
            if (eq.c != 0) return finite_set({});
            continue;
        }
        eqs.push_back(eq);
    }

    if (eqs.empty()) {
        MultSolutionSet s;
        s.kind = MultSolutionSet::Kind::all;
        return s;
    }

    // Look for two independent equations: then the rational solution is
    // unique and just needs integrality plus nonnegativity.
    for (size_t i = 0; i < eqs.size(); ++i) {
        for (size_t j = i + 1; j < eqs.size(); ++j) {
            long long det = static_cast<long long>(eqs[j].a) * eqs[i].b -
                            static_cast<long long>(eqs[i].a) * eqs[j].b;
            if (det == 0) continue;
            long long mn = static_cast<long long>(eqs[i].b) * eqs[j].c -
                           static_cast<long long>(eqs[j].b) * eqs[i].c;
            long long nn = static_cast<long long>(eqs[i].a) * eqs[j].c -
                           static_cast<long long>(eqs[j].a) * eqs[i].c;
            if (mn % det != 0 || nn % det != 0) return finite_set({});
            long m = static_cast<long>(mn / det), n = static_cast<long>(nn / det);
            if (m < 0 || n < 0) return finite_set({});
            for (const LinEq& eq : eqs)
                if (static_cast<long long>(eq.a) * m - static_cast<long long>(eq.b) * n != eq.c)
                    return finite_set({});
            return finite_set({ExponentPair{n, m}});
        }
    }

    // Rank one: all (a, b) rows proportional. Check the c column is
    // consistent across rows, then solve the single Diophantine equation.
    for (size_t i = 1; i < eqs.size(); ++i) {
        if (static_cast<long long>(eqs[0].a) * eqs[i].c !=
                static_cast<long long>(eqs[i].a) * eqs[0].c ||
            static_cast<long long>(eqs[0].b) * eqs[i].c !=
                static_cast<long long>(eqs[i].b) * eqs[0].c)
            return finite_set({});
    }
    LinEq eq = eqs[0];

    if (eq.a == 0) {
        // n is pinned, m is free.
        if (eq.c % eq.b != 0) return finite_set({});
        long n = -eq.c / eq.b;
        if (n < 0) return finite_set({});
        MultSolutionSet s;
        s.kind = MultSolutionSet::Kind::family;
        s.base = {n, 0};
        s.step = {0, 1};
        return s;
    }
    if (eq.b == 0) {
        if (eq.c % eq.a != 0) return finite_set({});
        long m = eq.c / eq.a;
        if (m < 0) return finite_set({});
        MultSolutionSet s;
        s.kind = MultSolutionSet::Kind::family;
        s.base = {0, m};
        s.step = {1, 0};
        return s;
    }

    long u, v;
    long g = ext_gcd(eq.a, eq.b, u, v);  // a*u + b*v = g
    if (eq.c % g != 0) return finite_set({});
    long k = eq.c / g;
    long m0 = u * k, n0 = -v * k;        // a*m0 - b*n0 = c
    long dn = eq.a / g, dm = eq.b / g;   // homogeneous direction (n, m) += t*(dn, dm)

    if ((dn > 0) == (dm > 0)) {
        if (dn < 0) {
            dn = -dn;
            dm = -dm;
        }
        long t = std::max(ceil_div(-n0, dn), ceil_div(-m0, dm));
        MultSolutionSet s;
        s.kind = MultSolutionSet::Kind::family;
        s.base = {n0 + t * dn, m0 + t * dm};
        s.step = {dn, dm};
        return s;
    }

    // Opposite direction signs: only finitely many nonnegative solutions.
    if (dn < 0) {
        dn = -dn;
        dm = -dm;
        // re-orient so dn > 0, dm < 0
    }
    long t_lo = ceil_div(-n0, dn);       // n >= 0
    long t_hi = floor_div(-m0, dm);      // m >= 0 with dm < 0
    std::vector<ExponentPair> pts;
    for (long t = t_lo; t <= t_hi; ++t) pts.push_back({n0 + t * dn, m0 + t * dm});
    return finite_set(std::move(pts));
}

}  // namespace pam
