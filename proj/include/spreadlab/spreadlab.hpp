#pragma once

#include "spreadlab/bounds.hpp"
#include "spreadlab/constructions.hpp"
#include "spreadlab/defaults.hpp"
#include "spreadlab/digraph.hpp"
#include "spreadlab/eigensolver.hpp"
#include "spreadlab/exact.hpp"
#include "spreadlab/lu.hpp"
#include "spreadlab/matrix.hpp"
#include "spreadlab/perron.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/search.hpp"
#include "spreadlab/spectrum.hpp"
