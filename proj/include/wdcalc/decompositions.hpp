#ifndef WDCALC_DECOMPOSITIONS_HPP
#define WDCALC_DECOMPOSITIONS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "error.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace wdcalc
{

namespace detail
{

// Divisions by 1..n (log/exp series, squarefree parts of degree-n
// polynomials) are only sound when p > n.
inline void require_characteristic_above(const Field& f, std::size_t n, const char* what)
{
    if (f.is_prime() && f.characteristic() <= n) {
        throw characteristic_too_small(std::string(what) + " needs characteristic > " + std::to_string(n) + ", got "
                                       + f.to_string());
    }
}

} // namespace detail

/// Monic det(tI - M), via reduction to upper Hessenberg form by similarity
/// transforms followed by the Hessenberg determinant recurrence.
inline Polynomial charpoly(const Matrix& m)
{
    if (!m.is_square()) {
        throw invalid_input("characteristic polynomial of a non-square matrix (" + m.shape() + ")");
    }
    const Field f = m.field();
    const std::size_t n = m.rows();
    Matrix h = m;
    for (std::size_t col = 0; col + 2 < n; ++col) {
        const std::size_t target = col + 1;
        std::size_t pivot = target;
        while (pivot < n && h(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            continue;
        }
        if (pivot != target) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(h(pivot, j), h(target, j));
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::swap(h(i, pivot), h(i, target));
            }
        }
        const Scalar inv = h(target, col).inverse();
        for (std::size_t i = target + 1; i < n; ++i) {
            if (h(i, col).is_zero()) {
                continue;
            }
            const Scalar u = h(i, col) * inv;
            for (std::size_t j = 0; j < n; ++j) {
                h(i, j) -= u * h(target, j);
            }
            for (std::size_t r = 0; r < n; ++r) {
                h(r, target) += u * h(r, i);
            }
        }
    }

    // polys[k] = charpoly of the leading k x k block
    std::vector<Polynomial> polys;
    polys.reserve(n + 1);
    polys.push_back(Polynomial::constant(Scalar::one(f)));
    for (std::size_t k = 1; k <= n; ++k) {
        Polynomial next = Polynomial::linear(h(k - 1, k - 1)) * polys[k - 1];
        Scalar sub = Scalar::one(f);
        for (std::size_t i = 1; i < k; ++i) {
            sub *= h(k - i, k - i - 1);
            const Scalar coeff = h(k - i - 1, k - 1) * sub;
            if (!coeff.is_zero()) {
                next = next - coeff * polys[k - i - 1];
            }
        }
        polys.push_back(std::move(next));
    }
    return polys.back();
}

/// f / gcd(f, f'), made monic.
inline Polynomial squarefree_part(const Polynomial& f)
{
    if (f.is_zero()) {
        throw invalid_input("squarefree part of the zero polynomial");
    }
    detail::require_characteristic_above(f.field(), static_cast<std::size_t>(f.degree()), "squarefree part");
    return divmod(f, gcd(f, f.derivative())).first.monic();
}

/// Multiplicative Jordan decomposition P = s u.
struct JordanChevalley {
    Matrix semisimple;
    Matrix unipotent;
};

/// Upper bound on Newton steps: ceil(log2 n) + 1.
inline std::size_t jordan_chevalley_step_bound(std::size_t n)
{
    return n <= 1 ? 1 : static_cast<std::size_t>(std::bit_width(n - 1)) + 1;
}

/// Newton iteration x <- x - q(x) q'(x)^{-1} from x = P on the squarefree part
/// q of the characteristic polynomial; the limit s is the semisimple part and
/// u = s^{-1} P. Stays inside the base field.
inline JordanChevalley jordan_chevalley(const Matrix& p)
{
    if (!p.is_square()) {
        throw invalid_input("Jordan-Chevalley decomposition of a non-square matrix");
    }
    const std::size_t n = p.rows();
    detail::require_characteristic_above(p.field(), n, "Jordan-Chevalley decomposition");
    if (determinant(p).is_zero()) {
        throw invalid_input("Jordan-Chevalley decomposition requires an invertible matrix");
    }
    const Polynomial q = squarefree_part(charpoly(p));
    const Polynomial dq = q.derivative();
    Matrix x = p;
    const std::size_t bound = jordan_chevalley_step_bound(n);
    std::size_t steps = 0;
    for (Matrix qx = q.evaluate(x); !qx.is_zero(); qx = q.evaluate(x)) {
        if (steps == bound) {
            throw internal_error("Newton iteration for the semisimple part did not converge in "
                                 + std::to_string(bound) + " steps");
        }
        Matrix correction = [&] {
            try {
                return inverse(dq.evaluate(x));
            } catch (const invalid_input&) {
                throw internal_error("q'(x) singular during Jordan-Chevalley iteration");
            }
        }();
        x = x - qx * correction;
        ++steps;
    }
    Matrix u = inverse(x) * p;
    if (!is_unipotent(u)) {
        throw internal_error("Jordan-Chevalley unipotent factor is not unipotent");
    }
    return {std::move(x), std::move(u)};
}

/// log U = sum_{k=1}^{n-1} (-1)^{k+1} (U - I)^k / k for unipotent U.
inline Matrix nilpotent_log(const Matrix& u)
{
    if (!u.is_square()) {
        throw invalid_input("logarithm of a non-square matrix");
    }
    const std::size_t n = u.rows();
    detail::require_characteristic_above(u.field(), n, "matrix logarithm");
    const Field f = u.field();
    const Matrix x = u - Matrix::identity(f, n);
    if (!pow(x, n).is_zero()) {
        throw invalid_input("matrix logarithm requires a unipotent matrix");
    }
    Matrix acc(f, n, n);
    Matrix power = x;
    for (std::size_t k = 1; k < n && !power.is_zero(); ++k) {
        const Scalar c = Scalar::from_int(f, k % 2 == 1 ? 1 : -1) / Scalar::from_int(f, static_cast<long long>(k));
        acc = acc + c * power;
        power = power * x;
    }
    return acc;
}

/// exp N = sum_{k=0}^{n-1} N^k / k! for nilpotent N.
inline Matrix nilpotent_exp(const Matrix& nil)
{
    if (!nil.is_square()) {
        throw invalid_input("exponential of a non-square matrix");
    }
    const std::size_t n = nil.rows();
    detail::require_characteristic_above(nil.field(), n, "matrix exponential");
    if (!pow(nil, n).is_zero()) {
        throw invalid_input("matrix exponential requires a nilpotent matrix");
    }
    const Field f = nil.field();
    Matrix acc = Matrix::identity(f, n);
    Matrix term = Matrix::identity(f, n);
    for (std::size_t k = 1; k < n; ++k) {
        term = Scalar::from_int(f, static_cast<long long>(k)).inverse() * (term * nil);
        if (term.is_zero()) {
            break;
        }
        acc = acc + term;
    }
    return acc;
}

/// Image of a rational scalar in F_p; the denominator must be prime to p.
inline Scalar reduce_mod_p(const Scalar& x, std::uint64_t p)
{
    const Field fp = Field::prime(p);
    const auto& q = x.as_rational();
    const Scalar den = Scalar::from_mpz(fp, q.get_den());
    if (den.is_zero()) {
        throw not_p_integral(x.to_string() + " is not " + std::to_string(p) + "-integral");
    }
    return Scalar::from_mpz(fp, q.get_num()) / den;
}

/// Entrywise reduction of a p-integral rational matrix.
inline Matrix reduce_mod_p(const Matrix& m, std::uint64_t p)
{
    if (!m.field().is_rational()) {
        throw invalid_input("reduction mod p expects a rational matrix, got one over " + m.field().to_string());
    }
    const Field fp = Field::prime(p);
    Matrix out(fp, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            try {
                out(i, j) = reduce_mod_p(m(i, j), p);
            } catch (const not_p_integral&) {
                throw not_p_integral("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = "
                                     + m(i, j).to_string() + " is not " + std::to_string(p) + "-integral");
            }
        }
    }
    return out;
}

} // namespace wdcalc

#endif // WDCALC_DECOMPOSITIONS_HPP
