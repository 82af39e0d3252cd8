#ifndef WDCALC_SCALAR_HPP
#define WDCALC_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <gmpxx.h>

#include "error.hpp"
#include "number_theory.hpp"

namespace wdcalc
{

class Scalar;

/// Coefficient field: either the rationals or a prime field F_p with p < 2^64.
class Field
{
public:
    enum class Kind { rational, prime };

    static Field rational() { return Field(Kind::rational, 0); }

    static Field prime(std::uint64_t p)
    {
        if (!nt::is_prime(p)) {
            throw invalid_input("field modulus " + std::to_string(p) + " is not prime");
        }
        return Field(Kind::prime, p);
    }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    bool is_prime() const { return kind_ == Kind::prime; }

    /// Characteristic; 0 for the rationals.
    std::uint64_t characteristic() const { return p_; }

    std::string to_string() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

    friend bool operator==(const Field&, const Field&) = default;

private:
    friend class Scalar;

    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

/// An exact element of a Field. Rationals are kept in lowest terms with a
/// positive denominator; prime-field residues live in [0, p).
class Scalar
{
public:
    Scalar() : value_(mpq_class(0)) {}

    explicit Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }

    static Scalar residue(std::uint64_t value, const Field& f)
    {
        if (!f.is_prime()) {
            throw invalid_input("residue constructor requires a prime field");
        }
        return Scalar(Residue{value % f.characteristic(), f.characteristic()});
    }

    static Scalar from_int(const Field& f, long long v)
    {
        if (f.is_rational()) {
            return Scalar(mpq_class(static_cast<long>(v)));
        }
        const auto p = f.characteristic();
        const long long m = static_cast<long long>(v % static_cast<__int128>(p));
        const auto r = m < 0 ? static_cast<std::uint64_t>(static_cast<__int128>(m) + p) : static_cast<std::uint64_t>(m);
        return Scalar(Residue{r, p});
    }

    static Scalar from_mpz(const Field& f, const mpz_class& v)
    {
        if (f.is_rational()) {
            return Scalar(mpq_class(v));
        }
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), f.characteristic());
        return Scalar(Residue{r.get_ui(), f.characteristic()});
    }

    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }

    /// Parses "a", "-a" or "a/b" into an element of f. Over F_p the
    /// denominator must be a unit.
    static Scalar parse(const Field& f, std::string_view text)
    {
        static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(\s*/\s*([0-9]+))?\s*$)");
        std::match_results<std::string_view::const_iterator> m;
        if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
            throw invalid_input("malformed scalar \"" + std::string(text) + "\"");
        }
        std::string num_text = m[1].str();
        if (num_text.front() == '+') {
            num_text.erase(0, 1);
        }
        const mpz_class num(num_text, 10);
        const mpz_class den(m[3].matched ? m[3].str() : std::string("1"), 10);
        if (den == 0) {
            throw invalid_input("zero denominator in \"" + std::string(text) + "\"");
        }
        if (f.is_rational()) {
            return Scalar(mpq_class(num, den));
        }
        const Scalar d = from_mpz(f, den);
        if (d.is_zero()) {
            throw not_p_integral("\"" + std::string(text) + "\" has a denominator divisible by "
                                 + std::to_string(f.characteristic()));
        }
        return from_mpz(f, num) / d;
    }

    Field field() const
    {
        if (const auto* r = std::get_if<Residue>(&value_)) {
            return Field(Field::Kind::prime, r->p);
        }
        return Field::rational();
    }

    bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }

    bool is_zero() const
    {
        if (const auto* q = std::get_if<mpq_class>(&value_)) {
            return sgn(*q) == 0;
        }
        return std::get<Residue>(value_).v == 0;
    }

    bool is_one() const
    {
        if (const auto* q = std::get_if<mpq_class>(&value_)) {
            return *q == 1;
        }
        return std::get<Residue>(value_).v == 1;
    }

    const mpq_class& as_rational() const
    {
        if (!is_rational()) {
            throw invalid_input("scalar is not rational");
        }
        return std::get<mpq_class>(value_);
    }

    std::uint64_t as_residue() const
    {
        if (is_rational()) {
            throw invalid_input("scalar is not a prime-field element");
        }
        return std::get<Residue>(value_).v;
    }

    Scalar inverse() const
    {
        if (is_zero()) {
            throw invalid_input("division by zero");
        }
        if (const auto* q = std::get_if<mpq_class>(&value_)) {
            return Scalar(mpq_class(1) / *q);
        }
        const auto& r = std::get<Residue>(value_);
        return Scalar(Residue{nt::invmod(r.v, r.p), r.p});
    }

    Scalar operator-() const
    {
        if (const auto* q = std::get_if<mpq_class>(&value_)) {
            return Scalar(mpq_class(-*q));
        }
        const auto& r = std::get<Residue>(value_);
        return Scalar(Residue{r.v == 0 ? 0 : r.p - r.v, r.p});
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(mpq_class(a.as_rational() + b.as_rational()));
        }
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{nt::addmod(x, y, p), p});
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(mpq_class(a.as_rational() - b.as_rational()));
        }
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{nt::submod(x, y, p), p});
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(mpq_class(a.as_rational() * b.as_rational()));
        }
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{nt::mulmod(x, y, p), p});
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Exact equality; elements of different fields compare unequal.
    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (a.is_rational() != b.is_rational()) {
            return false;
        }
        if (a.is_rational()) {
            return a.as_rational() == b.as_rational();
        }
        const auto& x = std::get<Residue>(a.value_);
        const auto& y = std::get<Residue>(b.value_);
        return x.v == y.v && x.p == y.p;
    }

    /// Canonical text: "a" or "a/b" for rationals, the residue for F_p.
    std::string to_string() const
    {
        if (const auto* q = std::get_if<mpq_class>(&value_)) {
            return q->get_str(10);
        }
        return std::to_string(std::get<Residue>(value_).v);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    struct Residue {
        std::uint64_t v;
        std::uint64_t p;
    };

    explicit Scalar(Residue r) : value_(r) {}

    static std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> residues(const Scalar& a, const Scalar& b)
    {
        const auto* x = std::get_if<Residue>(&a.value_);
        const auto* y = std::get_if<Residue>(&b.value_);
        if (x == nullptr || y == nullptr || x->p != y->p) {
            throw invalid_input("arithmetic between scalars of different fields");
        }
        return {x->v, y->v, x->p};
    }

    std::variant<mpq_class, Residue> value_;
};

/// k-th power for k >= 0.
inline Scalar pow(const Scalar& base, std::uint64_t k)
{
    Scalar result = Scalar::one(base.field());
    Scalar b = base;
    while (k != 0) {
        if (k & 1U) {
            result *= b;
        }
        b *= b;
        k >>= 1U;
    }
    return result;
}

} // namespace wdcalc

#endif // WDCALC_SCALAR_HPP
