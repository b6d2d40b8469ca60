#pragma once

#include "heco/baselines.hpp"
#include "heco/benchmarks.hpp"
#include "heco/de_engine.hpp"
#include "heco/experiment.hpp"
#include "heco/heco_solver.hpp"
#include "heco/io.hpp"
#include "heco/objectives.hpp"
#include "heco/parallel.hpp"
#include "heco/problem.hpp"
#include "heco/random.hpp"
#include "heco/run_record.hpp"
#include "heco/stats.hpp"
