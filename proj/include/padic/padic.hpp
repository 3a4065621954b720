#pragma once

#include "padic/errors.hpp"
#include "padic/valuation.hpp"
#include "padic/padic_number.hpp"
#include "padic/polynomial.hpp"
#include "padic/hensel.hpp"
#include "padic/oracle.hpp"
