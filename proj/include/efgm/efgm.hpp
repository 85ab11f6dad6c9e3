#pragma once

#include "efgm/combinatorics.hpp"
#include "efgm/error.hpp"
#include "efgm/estimation.hpp"
#include "efgm/evaluation.hpp"
#include "efgm/geometry.hpp"
#include "efgm/io.hpp"
#include "efgm/matrix.hpp"
#include "efgm/ordering.hpp"
#include "efgm/random.hpp"
#include "efgm/representations.hpp"
#include "efgm/sampling.hpp"
