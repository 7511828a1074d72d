#pragma once

#include "ducci/binomial.hpp"
#include "ducci/checks.hpp"
#include "ducci/coeff.hpp"
#include "ducci/errors.hpp"
#include "ducci/graph.hpp"
#include "ducci/orbit.hpp"
#include "ducci/system.hpp"
