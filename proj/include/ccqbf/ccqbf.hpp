#pragma once

#include "ccqbf/affine.hpp"
#include "ccqbf/algebra.hpp"
#include "ccqbf/backdoor.hpp"
#include "ccqbf/base_class.hpp"
#include "ccqbf/error.hpp"
#include "ccqbf/formula.hpp"
#include "ccqbf/oracle.hpp"
#include "ccqbf/qdimacs.hpp"
#include "ccqbf/reductions.hpp"
#include "ccqbf/solve_stats.hpp"
#include "ccqbf/solver_2cnf.hpp"
#include "ccqbf/special.hpp"
#include "ccqbf/twocnf.hpp"
