#pragma once

#include "shiftlab/core/alphabet.hpp"
#include "shiftlab/core/metric.hpp"
#include "shiftlab/core/sequence.hpp"
#include "shiftlab/dimension/local_dims.hpp"
#include "shiftlab/dimension/local_entropy.hpp"
#include "shiftlab/dimension/packing.hpp"
#include "shiftlab/dimension/scale_grid.hpp"
#include "shiftlab/genericity/experiments.hpp"
#include "shiftlab/genericity/periodize.hpp"
#include "shiftlab/genericity/test_functions.hpp"
#include "shiftlab/genericity/weak_distance.hpp"
#include "shiftlab/measures/ball_mass.hpp"
#include "shiftlab/measures/coordinate_law.hpp"
#include "shiftlab/measures/model.hpp"
#include "shiftlab/measures/sampling.hpp"
#include "shiftlab/recurrence/rates.hpp"
#include "shiftlab/recurrence/return_times.hpp"
#include "shiftlab/util/parallel.hpp"
#include "shiftlab/util/random.hpp"
#include "shiftlab/util/stats.hpp"
