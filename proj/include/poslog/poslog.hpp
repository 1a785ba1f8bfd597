#pragma once

// Umbrella header for the possibilistic-logic toolkit: weighted classical
// formulas with graded necessity/possibility lower bounds, an exact
// model-enumeration oracle tolerant to partial inconsistency, a weighted
// resolution prover, and a level-cut reduction to classical refutation.

#include "poslog/clausal.hpp"
#include "poslog/formula.hpp"
#include "poslog/kb.hpp"
#include "poslog/levelcut.hpp"
#include "poslog/parse.hpp"
#include "poslog/print.hpp"
#include "poslog/rational.hpp"
#include "poslog/resolution.hpp"
#include "poslog/semantics.hpp"
#include "poslog/syntax.hpp"
#include "poslog/unify.hpp"
#include "poslog/valuation.hpp"
