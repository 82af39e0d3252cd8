#ifndef WDCALC_MODP_GL2_HPP
#define WDCALC_MODP_GL2_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "number_theory.hpp"

namespace wdcalc
{

/// Shape of a two-dimensional mod-p Weil-Deligne datum relative to 1 + |.|.
enum class Gl2Shape { Split, NonsplitCycByOne, NonsplitOneByCyc, SubGeneric };

enum class Regime { Banal, QisMinusOne, QisOne };

struct Gl2ModpInput {
    std::uint64_t q_mod_p = 0;
    std::uint64_t p = 0;
    Gl2Shape shape = Gl2Shape::Split;
};

struct Gl2ModpOutput {
    std::vector<std::string> constituents; // socle first
    Regime regime = Regime::Banal;
    std::string extension_note;
};

namespace gl2
{

inline const std::string st_twisted = "St⊗(|·|∘det)";
inline const std::string abs_det = "|·|∘det";
inline const std::string st = "St";
inline const std::string trivial = "1";
inline const std::string pi_one = "π(1)";
inline const std::string unique_generic = "unique-generic(scs)";

} // namespace gl2

inline std::string to_string(Gl2Shape s)
{
    switch (s) {
    case Gl2Shape::Split:
        return "Split";
    case Gl2Shape::NonsplitCycByOne:
        return "NonsplitCycByOne";
    case Gl2Shape::NonsplitOneByCyc:
        return "NonsplitOneByCyc";
    case Gl2Shape::SubGeneric:
        return "SubGeneric";
    }
    throw internal_error("unknown shape");
}

inline Gl2Shape parse_shape(std::string_view name)
{
    for (auto s : {Gl2Shape::Split, Gl2Shape::NonsplitCycByOne, Gl2Shape::NonsplitOneByCyc, Gl2Shape::SubGeneric}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw invalid_input("unknown shape \"" + std::string(name) + "\"");
}

inline std::string to_string(Regime r)
{
    switch (r) {
    case Regime::Banal:
        return "Banal";
    case Regime::QisMinusOne:
        return "QisMinusOne";
    case Regime::QisOne:
        return "QisOne";
    }
    throw internal_error("unknown regime");
}

inline Regime regime(std::uint64_t q_mod_p, std::uint64_t p)
{
    if (p == 2 || !nt::is_prime(p)) {
        throw invalid_input("p = " + std::to_string(p) + " must be an odd prime");
    }
    if (q_mod_p == 0 || q_mod_p >= p) {
        throw invalid_input("q mod p = " + std::to_string(q_mod_p) + " is outside 1.." + std::to_string(p - 1));
    }
    if (q_mod_p == 1) {
        return Regime::QisOne;
    }
    if (q_mod_p == p - 1) {
        return Regime::QisMinusOne;
    }
    return Regime::Banal;
}

/// Jordan-Holder constituents of the mod-p representation attached to a
/// two-dimensional datum, listed from the socle up.
inline Gl2ModpOutput gl2_modp_table(const Gl2ModpInput& in)
{
    Gl2ModpOutput out;
    out.regime = regime(in.q_mod_p, in.p);
    const bool split = in.shape == Gl2Shape::Split;
    if (in.shape == Gl2Shape::SubGeneric) {
        out.constituents = {gl2::unique_generic};
        out.extension_note = "irreducible";
        return out;
    }
    switch (out.regime) {
    case Regime::Banal:
        out.constituents = split ? std::vector{gl2::st_twisted, gl2::abs_det} : std::vector{gl2::st_twisted};
        out.extension_note = split ? "nonsplit extension of |·|∘det by the generic socle" : "irreducible";
        break;
    case Regime::QisMinusOne:
        if (split) {
            out.constituents = {gl2::pi_one, gl2::trivial, gl2::abs_det};
            out.extension_note = "envelope of π(1); cosocle 1 ⊕ |·|∘det";
        } else if (in.shape == Gl2Shape::NonsplitCycByOne) {
            out.constituents = {gl2::pi_one, gl2::abs_det};
            out.extension_note = "nonsplit extension of |·|∘det by π(1)";
        } else {
            out.constituents = {gl2::pi_one, gl2::trivial};
            out.extension_note = "nonsplit extension of 1 by π(1)";
        }
        break;
    case Regime::QisOne:
        if (split) {
            out.constituents = {gl2::st, gl2::trivial, gl2::trivial};
            out.extension_note = "universal extension of 1 by St";
        } else {
            out.constituents = {gl2::st, gl2::trivial};
            out.extension_note = "nonsplit extension of 1 by St; the class is a line in H^1(G_E, 1)";
        }
        break;
    }
    return out;
}

/// c(1) = 1, c(n) = (2^n - 1) c(n - 1).
inline std::uint64_t length_bound(std::uint64_t n)
{
    if (n == 0) {
        throw invalid_input("length bound needs n >= 1");
    }
    if (n >= 64) {
        throw invalid_input("length bound for n = " + std::to_string(n) + " overflows 64 bits");
    }
    std::uint64_t c = 1;
    for (std::uint64_t k = 2; k <= n; ++k) {
        if (__builtin_mul_overflow(c, (std::uint64_t{1} << k) - 1, &c)) {
            throw invalid_input("length bound for n = " + std::to_string(n) + " overflows 64 bits");
        }
    }
    return c;
}

} // namespace wdcalc

#endif // WDCALC_MODP_GL2_HPP
