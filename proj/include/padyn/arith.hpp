#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace padyn {

bool is_prime(long n);
bool is_squarefree(long n);

/// Exponent of p in n; nullopt when n == 0.
std::optional<long> vp(const mpz_class& n, long p);
std::optional<long> vp(const mpq_class& q, long p);

int mobius(int n);
std::vector<int> divisors(int n);
long lcm(long a, long b);

/// Positive n with n == r^k for a prime r, returning (r, k).
std::optional<std::pair<long, int>> prime_power(long n);

std::optional<mpz_class> exact_sqrt(const mpz_class& n);
std::optional<mpq_class> exact_sqrt(const mpq_class& q);

/// Find a/b with |a| <= bound, 0 < b <= bound, gcd(b, modulus) = 1 and
/// a == b*x (mod modulus). Returns nullopt when no such fraction exists.
std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& modulus,
                                              const mpz_class& bound);

mpz_class pow_ui(long base, unsigned long exp);

}  // namespace padyn
