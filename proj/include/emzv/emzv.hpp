#pragma once

#include "errors.hpp"
#include "index.hpp"
#include "rational.hpp"
#include "word_algebra.hpp"
#include "sparse_poly.hpp"
#include "fay_coeff.hpp"
#include "expression.hpp"
#include "relations.hpp"
#include "reduction.hpp"
#include "numerics/tau.hpp"
#include "numerics/config.hpp"
#include "numerics/kronecker.hpp"
#include "numerics/quadrature.hpp"
#include "numerics/values.hpp"
#include "harness.hpp"
