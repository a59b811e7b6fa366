#pragma once

#include "contra/adjust.hpp"
#include "contra/bench.hpp"
#include "contra/bits.hpp"
#include "contra/context.hpp"
#include "contra/decision_tree.hpp"
#include "contra/implications.hpp"
#include "contra/io.hpp"
#include "contra/lattice.hpp"
#include "contra/preprocess.hpp"
#include "contra/random.hpp"
#include "contra/scales.hpp"
#include "contra/serialize.hpp"
