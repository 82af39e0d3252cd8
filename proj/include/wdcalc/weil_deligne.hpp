#ifndef WDCALC_WEIL_DELIGNE_HPP
#define WDCALC_WEIL_DELIGNE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "decompositions.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"
#include "scalar.hpp"

namespace wdcalc
{

/// An unramified Weil-Deligne representation (P, N) with residue cardinality q:
/// P is the image of Frobenius, N the monodromy, and P N P^{-1} = q^{-1} N.
///
/// Construction validates every invariant, so a live object always satisfies
/// them; all transformations return new objects.
class WeilDeligneRep
{
public:
    WeilDeligneRep(std::int64_t q, Matrix frobenius, Matrix monodromy)
        : q_(q), frobenius_(std::move(frobenius)), monodromy_(std::move(monodromy))
    {
        validate();
    }

    std::int64_t q() const { return q_; }
    std::size_t dim() const { return frobenius_.rows(); }
    const Field& field() const { return frobenius_.field(); }
    const Matrix& frobenius() const { return frobenius_; }
    const Matrix& monodromy() const { return monodromy_; }

    /// q^{-1} in the coefficient field.
    Scalar q_inverse() const { return Scalar::from_int(field(), q_).inverse(); }

    friend bool operator==(const WeilDeligneRep&, const WeilDeligneRep&) = default;

private:
    void validate() const
    {
        if (q_ < 2 || !nt::prime_power(static_cast<std::uint64_t>(q_))) {
            throw invalid_input("q = " + std::to_string(q_) + " is not a prime power >= 2");
        }
        if (!frobenius_.is_square() || !monodromy_.is_square() || frobenius_.rows() != monodromy_.rows()) {
            throw invalid_input("Frobenius " + frobenius_.shape() + " and monodromy " + monodromy_.shape()
                                + " must be square of equal size");
        }
        if (!(frobenius_.field() == monodromy_.field())) {
            throw invalid_input("Frobenius and monodromy live over different fields");
        }
        if (field().is_prime() && static_cast<std::uint64_t>(q_) % field().characteristic() == 0) {
            throw invalid_input("q = " + std::to_string(q_) + " is not a unit in " + field().to_string());
        }
        if (determinant(frobenius_).is_zero()) {
            throw invalid_input("Frobenius matrix is singular");
        }
        if (!is_nilpotent(monodromy_)) {
            throw invalid_input("monodromy operator is not nilpotent");
        }
        // P N = q^{-1} N P avoids inverting P
        if (!(frobenius_ * monodromy_ == q_inverse() * (monodromy_ * frobenius_))) {
            throw invalid_input("twist relation P N P^-1 = q^-1 N fails");
        }
    }

    std::int64_t q_;
    Matrix frobenius_;
    Matrix monodromy_;
};

/// Values of a Galois representation at Frobenius and at an inertia element
/// sigma normalized so that t_p(sigma) = 1.
struct GaloisSample {
    std::int64_t q;
    Matrix phi;
    Matrix sigma;
};

/// rank(N^i) for i = 1..n.
using RankProfile = std::vector<std::size_t>;

/// Deligne's recipe at the stored generators: N = log(sigma), P = phi.
inline WeilDeligneRep from_galois_sample(const GaloisSample& g)
{
    if (!is_unipotent(g.sigma)) {
        throw invalid_input("inertia sample sigma is not unipotent");
    }
    return WeilDeligneRep(g.q, g.phi, nilpotent_log(g.sigma));
}

/// Sp(lambda, d): P = diag(lambda, q^{-1} lambda, ..., q^{-(d-1)} lambda) and
/// N sending basis vector i to basis vector i + 1.
inline WeilDeligneRep special_rep(const Scalar& lambda, std::size_t d, std::int64_t q)
{
    if (d == 0) {
        throw invalid_input("special representation of dimension 0");
    }
    if (lambda.is_zero()) {
        throw invalid_input("special representation with zero Frobenius eigenvalue");
    }
    const Field f = lambda.field();
    const Scalar q_inv = Scalar::from_int(f, q).inverse();
    std::vector<Scalar> diag;
    Scalar current = lambda;
    for (std::size_t i = 0; i < d; ++i) {
        diag.push_back(current);
        current *= q_inv;
    }
    Matrix n(f, d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        n(i + 1, i) = Scalar::one(f);
    }
    return WeilDeligneRep(q, Matrix::diagonal(f, diag), std::move(n));
}

inline WeilDeligneRep direct_sum(const WeilDeligneRep& a, const WeilDeligneRep& b)
{
    if (a.q() != b.q()) {
        throw invalid_input("direct sum of representations with q = " + std::to_string(a.q()) + " and q = "
                            + std::to_string(b.q()));
    }
    if (!(a.field() == b.field())) {
        throw invalid_input("direct sum of representations over " + a.field().to_string() + " and "
                            + b.field().to_string());
    }
    return WeilDeligneRep(a.q(), block_diagonal(a.frobenius(), b.frobenius()),
                          block_diagonal(a.monodromy(), b.monodromy()));
}

/// Replaces P by its semisimple part, keeping N.
inline WeilDeligneRep frobenius_semisimplify(const WeilDeligneRep& w)
{
    auto [s, u] = jordan_chevalley(w.frobenius());
    if (!(u * w.monodromy() == w.monodromy() * u)) {
        throw internal_error("unipotent part of Frobenius does not commute with N");
    }
    return WeilDeligneRep(w.q(), std::move(s), w.monodromy());
}

/// Entrywise reduction of a p-integral rational representation.
inline WeilDeligneRep reduce_wd(const WeilDeligneRep& w, std::uint64_t p)
{
    if (!w.field().is_rational()) {
        throw invalid_input("reduction expects a representation over Q");
    }
    Field::prime(p); // rejects non-prime p
    if (static_cast<std::uint64_t>(w.q()) % p == 0) {
        throw invalid_input("q = " + std::to_string(w.q()) + " is divisible by p = " + std::to_string(p));
    }
    Matrix pbar = [&] {
        try {
            return reduce_mod_p(w.frobenius(), p);
        } catch (const not_p_integral& e) {
            throw not_p_integral(std::string("Frobenius ") + e.what());
        }
    }();
    Matrix nbar = [&] {
        try {
            return reduce_mod_p(w.monodromy(), p);
        } catch (const not_p_integral& e) {
            throw not_p_integral(std::string("monodromy ") + e.what());
        }
    }();
    if (determinant(pbar).is_zero()) {
        throw invalid_input("det(P) is not a " + std::to_string(p) + "-adic unit");
    }
    return WeilDeligneRep(w.q(), std::move(pbar), std::move(nbar));
}

inline RankProfile rank_profile(const WeilDeligneRep& w)
{
    RankProfile out;
    Matrix power = w.monodromy();
    for (std::size_t i = 1; i <= w.dim(); ++i) {
        out.push_back(rank(power));
        power = power * w.monodromy();
    }
    return out;
}

/// True iff the monodromy rank profile survives reduction mod p.
inline bool is_minimal_lift(const WeilDeligneRep& w, std::uint64_t p)
{
    return rank_profile(w) == rank_profile(reduce_wd(w, p));
}

} // namespace wdcalc

#endif // WDCALC_WEIL_DELIGNE_HPP
