#pragma once

#include "budget.hpp"
#include "combinatorics.hpp"
#include "construct.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "graph.hpp"
#include "hypergraph.hpp"
#include "lincomb.hpp"
#include "lps.hpp"
#include "matrix.hpp"
#include "mincode.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "spectral.hpp"
#include "subspace.hpp"
#include "supply.hpp"
#include "verify.hpp"
