#ifndef WDCALC_ERROR_HPP
#define WDCALC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wdcalc
{

/// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data does not hold.
class invalid_input : public error
{
public:
    using error::error;
};

/// An entry has a denominator divisible by the chosen prime.
class not_p_integral : public invalid_input
{
public:
    using invalid_input::invalid_input;
};

/// A characteristic polynomial does not split into linear factors over the base field.
class non_split_spectrum : public invalid_input
{
public:
    using invalid_input::invalid_input;
};

/// The operation divides by integers up to the dimension, which the field characteristic does not allow.
class characteristic_too_small : public invalid_input
{
public:
    using invalid_input::invalid_input;
};

/// An invariant that holds for every valid input failed; this always signals a bug.
class internal_error : public error
{
public:
    using error::error;
};

} // namespace wdcalc

#endif // WDCALC_ERROR_HPP
