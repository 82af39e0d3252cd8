#ifndef WDCALC_WDCALC_HPP
#define WDCALC_WDCALC_HPP

#include "decompositions.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "modp_gl2.hpp"
#include "multisegment.hpp"
#include "number_theory.hpp"
#include "polynomial.hpp"
#include "roots.hpp"
#include "scalar.hpp"
#include "specialization.hpp"
#include "weil_deligne.hpp"

#endif // WDCALC_WDCALC_HPP
