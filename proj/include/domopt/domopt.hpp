#pragma once

#include "domopt/domination.hpp"
#include "domopt/enumeration.hpp"
#include "domopt/error.hpp"
#include "domopt/graph.hpp"
#include "domopt/graph6.hpp"
#include "domopt/optimality.hpp"
#include "domopt/polynomial.hpp"
#include "domopt/reliability.hpp"
#include "domopt/serialize.hpp"
