#ifndef WDCALC_POLYNOMIAL_HPP
#define WDCALC_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace wdcalc
{

/// Univariate polynomial, coefficients lowest degree first, trailing zeros stripped.
class Polynomial
{
public:
    explicit Polynomial(Field field) : field_(field) {}

    Polynomial(Field field, std::vector<Scalar> coeffs) : field_(field), coeffs_(std::move(coeffs))
    {
        for (const auto& c : coeffs_) {
            if (!(c.field() == field_)) {
                throw invalid_input("polynomial coefficient outside " + field_.to_string());
            }
        }
        trim();
    }

    static Polynomial constant(const Scalar& c) { return Polynomial(c.field(), {c}); }

    /// t - root
    static Polynomial linear(const Scalar& root)
    {
        return Polynomial(root.field(), {-root, Scalar::one(root.field())});
    }

    static Polynomial from_ints(const Field& field, const std::vector<long long>& coeffs)
    {
        std::vector<Scalar> c;
        c.reserve(coeffs.size());
        for (auto v : coeffs) {
            c.push_back(Scalar::from_int(field, v));
        }
        return Polynomial(field, std::move(c));
    }

    const Field& field() const { return field_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    const std::vector<Scalar>& coefficients() const { return coeffs_; }

    Scalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(field_); }

    const Scalar& leading() const
    {
        if (is_zero()) {
            throw invalid_input("zero polynomial has no leading coefficient");
        }
        return coeffs_.back();
    }

    Polynomial monic() const
    {
        if (is_zero()) {
            throw invalid_input("zero polynomial cannot be made monic");
        }
        const Scalar inv = leading().inverse();
        std::vector<Scalar> c = coeffs_;
        for (auto& x : c) {
            x *= inv;
        }
        return Polynomial(field_, std::move(c));
    }

    Polynomial derivative() const
    {
        std::vector<Scalar> c;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            c.push_back(Scalar::from_int(field_, static_cast<long long>(i)) * coeffs_[i]);
        }
        return Polynomial(field_, std::move(c));
    }

    Scalar evaluate(const Scalar& x) const
    {
        Scalar acc = Scalar::zero(field_);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    /// Horner evaluation at a square matrix.
    Matrix evaluate(const Matrix& x) const
    {
        if (!x.is_square() || !(x.field() == field_)) {
            throw invalid_input("polynomial evaluated at incompatible matrix");
        }
        const Matrix id = Matrix::identity(field_, x.rows());
        Matrix acc(field_, x.rows(), x.cols());
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it * id;
        }
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        check_field(a, b);
        std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(i) + b.coeff(i);
        }
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        check_field(a, b);
        std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(i) - b.coeff(i);
        }
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        check_field(a, b);
        if (a.is_zero() || b.is_zero()) {
            return Polynomial(a.field_);
        }
        std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.field_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator*(const Scalar& s, const Polynomial& p)
    {
        std::vector<Scalar> c = p.coeffs_;
        for (auto& x : c) {
            x = s * x;
        }
        return Polynomial(p.field_, std::move(c));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (long i = degree(); i >= 0; --i) {
            const Scalar& c = coeffs_[static_cast<std::size_t>(i)];
            if (c.is_zero()) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            out += "(" + c.to_string() + ")";
            if (i > 0) {
                out += i == 1 ? "t" : "t^" + std::to_string(i);
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

private:
    static void check_field(const Polynomial& a, const Polynomial& b)
    {
        if (!(a.field_ == b.field_)) {
            throw invalid_input("polynomial arithmetic across fields");
        }
    }

    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
    }

    Field field_;
    std::vector<Scalar> coeffs_;
};

/// Euclidean division a = quotient * b + remainder.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) {
        throw invalid_input("polynomial division by zero");
    }
    const Field f = a.field();
    std::vector<Scalar> rem = a.coefficients();
    const auto& div = b.coefficients();
    const std::size_t db = div.size() - 1;
    if (rem.size() <= db) {
        return {Polynomial(f), a};
    }
    std::vector<Scalar> quot(rem.size() - db, Scalar::zero(f));
    const Scalar lead_inv = div.back().inverse();
    for (std::size_t k = rem.size(); k-- > db;) {
        const Scalar c = rem[k] * lead_inv;
        quot[k - db] = c;
        if (c.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j <= db; ++j) {
            rem[k - db + j] -= c * div[j];
        }
    }
    rem.resize(db);
    return {Polynomial(f, std::move(quot)), Polynomial(f, std::move(rem))};
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// (base^e) mod m.
inline Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& m)
{
    Polynomial result = divmod(Polynomial::constant(Scalar::one(m.field())), m).second;
    base = divmod(base, m).second;
    while (e != 0) {
        if (e & 1U) {
            result = divmod(result * base, m).second;
        }
        e >>= 1U;
        if (e != 0) {
            base = divmod(base * base, m).second;
        }
    }
    return result;
}

} // namespace wdcalc

#endif // WDCALC_POLYNOMIAL_HPP
