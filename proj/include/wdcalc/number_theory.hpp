#ifndef WDCALC_NUMBER_THEORY_HPP
#define WDCALC_NUMBER_THEORY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"

// Machine-word modular arithmetic used by the prime-field scalars and by the
// cyclic-line bookkeeping of reduced multisegments.
namespace wdcalc::nt
{

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>((static_cast<u128>(a) + b) % m);
}

inline u64 submod(u64 a, u64 b, u64 m)
{
    return a >= b ? a - b : static_cast<u64>(static_cast<u128>(a) + m - b);
}

inline u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) {
            result = mulmod(result, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

/// Inverse of a modulo m; a must be a unit.
inline u64 invmod(u64 a, u64 m)
{
    // extended Euclid on signed 128-bit to avoid overflow
    __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 quot = old_r / r;
        std::swap(old_r, r);
        r -= quot * old_r;
        std::swap(old_s, s);
        s -= quot * old_s;
    }
    if (old_r != 1) {
        throw invalid_input("element is not invertible modulo " + std::to_string(m));
    }
    __int128 res = old_s % static_cast<__int128>(m);
    if (res < 0) {
        res += m;
    }
    return static_cast<u64>(res);
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(u64 n)
{
    if (n < 2) {
        return false;
    }
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) {
            return n == small;
        }
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

namespace detail
{

inline u64 pollard_brent(u64 n)
{
    if (n % 2 == 0) {
        return 2;
    }
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
        u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
        u64 r = 1;
        constexpr u64 block = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) {
                y = f(y);
            }
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += block;
            } while (k < r && g == 1);
            r <<= 1U;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

inline void factor_into(u64 n, std::map<u64, unsigned>& out)
{
    if (n == 1) {
        return;
    }
    for (u64 small = 2; small < 64; ++small) {
        while (n % small == 0) {
            ++out[small];
            n /= small;
        }
    }
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n)
{
    std::map<u64, unsigned> acc;
    detail::factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

/// Returns (r, m) with n = r^m for a prime r, or nullopt when n is not a prime power.
inline std::optional<std::pair<u64, unsigned>> prime_power(u64 n)
{
    if (n < 2) {
        return std::nullopt;
    }
    const auto f = factorize(n);
    if (f.size() != 1) {
        return std::nullopt;
    }
    return f.front();
}

/// Multiplicative order of a unit a modulo the prime p.
inline u64 multiplicative_order(u64 a, u64 p)
{
    a %= p;
    if (a == 0) {
        throw invalid_input("zero has no multiplicative order");
    }
    u64 order = p - 1;
    for (auto [prime, exp] : factorize(p - 1)) {
        for (unsigned i = 0; i < exp; ++i) {
            if (powmod(a, order / prime, p) == 1) {
                order /= prime;
            } else {
                break;
            }
        }
    }
    return order;
}

} // namespace wdcalc::nt

#endif // WDCALC_NUMBER_THEORY_HPP
