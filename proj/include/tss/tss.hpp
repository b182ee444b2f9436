#pragma once

#include "tss/graph.hpp"
#include "tss/io.hpp"
#include "tss/diffusion.hpp"
#include "tss/greedy.hpp"
#include "tss/random.hpp"
#include "tss/powerlaw.hpp"
#include "tss/brkga.hpp"
#include "tss/stats.hpp"
#include "tss/bench.hpp"
