#ifndef WDCALC_ROOTS_HPP
#define WDCALC_ROOTS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "number_theory.hpp"
#include "polynomial.hpp"

namespace wdcalc
{

/// A root together with its multiplicity.
struct Root {
    Scalar value;
    std::size_t multiplicity;
};

namespace detail
{

inline std::vector<mpz_class> positive_divisors(const mpz_class& n)
{
    const mpz_class a = abs(n);
    if (!a.fits_ulong_p()) {
        throw invalid_input("coefficient " + a.get_str() + " too large for rational root search");
    }
    std::vector<mpz_class> divs{1};
    for (auto [prime, exp] : nt::factorize(a.get_ui())) {
        const std::size_t existing = divs.size();
        mpz_class power = 1;
        for (unsigned e = 1; e <= exp; ++e) {
            power *= static_cast<unsigned long>(prime);
            for (std::size_t k = 0; k < existing; ++k) {
                divs.push_back(divs[k] * power);
            }
        }
    }
    return divs;
}

/// Distinct rational roots via the rational root theorem.
inline std::vector<Scalar> rational_roots(const Polynomial& f)
{
    const Polynomial g = divmod(f, gcd(f, f.derivative())).first;
    // clear denominators
    mpz_class common = 1;
    for (const auto& c : g.coefficients()) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.as_rational().get_den_mpz_t());
    }
    std::vector<mpz_class> ints;
    for (const auto& c : g.coefficients()) {
        ints.emplace_back(c.as_rational().get_num() * (common / c.as_rational().get_den()));
    }
    std::vector<Scalar> roots;
    std::size_t shift = 0;
    while (shift < ints.size() && ints[shift] == 0) {
        ++shift;
    }
    if (shift > 0) {
        roots.emplace_back(mpq_class(0));
    }
    if (ints.size() - shift <= 1) {
        return roots;
    }
    const auto nums = positive_divisors(ints[shift]);
    const auto dens = positive_divisors(ints.back());
    for (const auto& d : dens) {
        for (const auto& a : nums) {
            for (int sign : {1, -1}) {
                mpq_class candidate(mpz_class(a * sign), d);
                candidate.canonicalize();
                if (candidate.get_den() != d) {
                    continue; // reached through a smaller denominator already
                }
                const Scalar r(candidate);
                if (g.evaluate(r).is_zero()) {
                    roots.push_back(r);
                }
            }
        }
    }
    return roots;
}

/// Distinct roots in F_p via gcd with t^p - t and equal-degree splitting.
inline std::vector<Scalar> prime_field_roots(const Polynomial& f)
{
    const Field field = f.field();
    const auto p = field.characteristic();
    std::vector<Scalar> roots;
    if (p == 2) {
        for (std::uint64_t v = 0; v < 2; ++v) {
            const Scalar x = Scalar::residue(v, field);
            if (f.evaluate(x).is_zero()) {
                roots.push_back(x);
            }
        }
        return roots;
    }
    const Polynomial t = Polynomial::linear(Scalar::zero(field));
    Polynomial g = gcd(f, powmod(t, p, f) - t);
    std::mt19937_64 rng(0x5eed5eedULL ^ p);
    std::vector<Polynomial> work{g};
    while (!work.empty()) {
        Polynomial h = std::move(work.back());
        work.pop_back();
        if (h.degree() <= 0) {
            continue;
        }
        if (h.degree() == 1) {
            roots.push_back(-h.monic().coeff(0));
            continue;
        }
        for (;;) {
            const Scalar a = Scalar::residue(rng() % p, field);
            const Polynomial shifted = Polynomial::linear(-a);
            const Polynomial split = gcd(h, powmod(shifted, (p - 1) / 2, h) - Polynomial::constant(Scalar::one(field)));
            if (split.degree() > 0 && split.degree() < h.degree()) {
                work.push_back(divmod(h, split).first);
                work.push_back(split);
                break;
            }
        }
    }
    return roots;
}

} // namespace detail

/// Roots of f with multiplicities when f splits into linear factors over its
/// field, nullopt otherwise. Roots are returned in a deterministic order
/// (rationals ascending, residues ascending).
inline std::optional<std::vector<Root>> split_roots(const Polynomial& f)
{
    if (f.is_zero()) {
        throw invalid_input("roots of the zero polynomial");
    }
    const Polynomial monic = f.monic();
    std::vector<Scalar> distinct =
        f.field().is_rational() ? detail::rational_roots(monic) : detail::prime_field_roots(monic);
    if (f.field().is_rational()) {
        std::sort(distinct.begin(), distinct.end(),
                  [](const Scalar& a, const Scalar& b) { return a.as_rational() < b.as_rational(); });
    } else {
        std::sort(distinct.begin(), distinct.end(),
                  [](const Scalar& a, const Scalar& b) { return a.as_residue() < b.as_residue(); });
    }
    std::vector<Root> out;
    Polynomial rest = monic;
    std::size_t total = 0;
    for (const auto& r : distinct) {
        std::size_t mult = 0;
        for (;;) {
            auto [quot, rem] = divmod(rest, Polynomial::linear(r));
            if (!rem.is_zero()) {
                break;
            }
            rest = std::move(quot);
            ++mult;
        }
        out.push_back({r, mult});
        total += mult;
    }
    if (static_cast<long>(total) != f.degree()) {
        return std::nullopt;
    }
    return out;
}

} // namespace wdcalc

#endif // WDCALC_ROOTS_HPP
