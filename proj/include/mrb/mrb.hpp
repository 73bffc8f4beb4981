#pragma once

#include "mrb/bench.hpp"
#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/families.hpp"
#include "mrb/geom.hpp"
#include "mrb/io.hpp"
#include "mrb/milp.hpp"
#include "mrb/optmodels.hpp"
#include "mrb/plan.hpp"
#include "mrb/separator.hpp"
#include "mrb/solvers.hpp"
