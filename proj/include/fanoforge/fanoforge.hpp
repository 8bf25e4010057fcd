#pragma once

#include "bundles.hpp"
#include "chow.hpp"
#include "construction.hpp"
#include "curves.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "lattice.hpp"
#include "rational.hpp"
