#pragma once

#include "fracalc/closed_form.hpp"
#include "fracalc/errors.hpp"
#include "fracalc/fractional_operator.hpp"
#include "fracalc/function_space.hpp"
#include "fracalc/oracle.hpp"
#include "fracalc/parse.hpp"
#include "fracalc/property_suite.hpp"
#include "fracalc/quadrature.hpp"
#include "fracalc/special_functions.hpp"
