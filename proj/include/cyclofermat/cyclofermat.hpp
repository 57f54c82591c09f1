#pragma once

/**
 * @file cyclofermat.hpp
 * @brief Umbrella header pulling in the whole library: exact integer, rational,
 *        and polynomial arithmetic; the real cyclotomic field Q(zeta_r +
 *        zeta_r^-1); prime ideal splitting and valuations; the Gaussian-integer
 *        descent; Frey curve invariants, reduction types, conductor and level;
 *        the S-unit survey machinery; and the eligibility criterion.
 */

#include "cli.hpp"
#include "criterion.hpp"
#include "descent.hpp"
#include "frey.hpp"
#include "int_poly.hpp"
#include "integers.hpp"
#include "json_out.hpp"
#include "mod_poly.hpp"
#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"
#include "report.hpp"
#include "sunit.hpp"
