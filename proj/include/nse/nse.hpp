#pragma once

#include "nse/bench.hpp"
#include "nse/counterexample.hpp"
#include "nse/coverage_set.hpp"
#include "nse/error.hpp"
#include "nse/game.hpp"
#include "nse/generators.hpp"
#include "nse/io.hpp"
#include "nse/lp.hpp"
#include "nse/maximin.hpp"
#include "nse/solver_multi.hpp"
#include "nse/solver_two.hpp"
#include "nse/verifier.hpp"
