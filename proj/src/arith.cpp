#include "padyn/arith.hpp"

#include <numeric>

#include "padyn/errors.hpp"

namespace padyn {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::NotEisenstein: return "NotEisenstein";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::NotInvertibleAtPrecision: return "NotInvertibleAtPrecision";
        case ErrorKind::NotIntegral: return "NotIntegral";
        case ErrorKind::HenselConditionFailed: return "HenselConditionFailed";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::PrecisionTooLowToDecide: return "PrecisionTooLowToDecide";
        case ErrorKind::DegreeNotDivisibleByP: return "DegreeNotDivisibleByP";
        case ErrorKind::DegreeNotPrimePower: return "DegreeNotPrimePower";
        case ErrorKind::StarConditionFailed: return "StarConditionFailed";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::InexactDivision: return "InexactDivision";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NotIntegralAt2: return "NotIntegralAt2";
        case ErrorKind::DepthCapReached: return "DepthCapReached";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_squarefree(long n) {
    if (n == 0) return false;
    long m = n < 0 ? -n : n;
    for (long d = 2; d * d <= m; ++d) {
        if (m % (d * d) == 0) return false;
        while (m % d == 0) m /= d;
    }
    return true;
}

std::optional<long> vp(const mpz_class& n, long p) {
    if (n == 0) return std::nullopt;
    mpz_class m = abs(n);
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
        m /= p;
        ++v;
    }
    return v;
}

std::optional<long> vp(const mpq_class& q, long p) {
    if (q == 0) return std::nullopt;
    return *vp(q.get_num(), p) - *vp(q.get_den(), p);
}

int mobius(int n) {
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<int> divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

long lcm(long a, long b) { return std::lcm(a, b); }

std::optional<std::pair<long, int>> prime_power(long n) {
    if (n < 2) return std::nullopt;
    for (long r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        int k = 0;
        while (n % r == 0) {
            n /= r;
            ++k;
        }
        if (n != 1) return std::nullopt;
        return std::make_pair(r, k);
    }
    return std::nullopt;
}

std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
    if (n < 0) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r != n) return std::nullopt;
    return r;
}

std::optional<mpq_class> exact_sqrt(const mpq_class& q) {
    auto num = exact_sqrt(mpz_class(q.get_num()));
    auto den = exact_sqrt(mpz_class(q.get_den()));
    if (!num || !den) return std::nullopt;
    mpq_class r(*num, *den);
    r.canonicalize();
    return r;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& modulus,
                                              const mpz_class& bound) {
    // Half-extended Euclid on (modulus, x): stop at the first remainder <= bound.
    mpz_class r0 = modulus, r1 = x % modulus;
    if (r1 < 0) r1 += modulus;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

mpz_class pow_ui(long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

}  // namespace padyn
