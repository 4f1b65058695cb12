#pragma once

// Umbrella header: presentation graphs of right-angled Coxeter groups,
// square/CFS machinery, join analysis, divergence classification, stability
// witnesses, and seeded random experiments.

#include "racg/certify.hpp"
#include "racg/errors.hpp"
#include "racg/gamma.hpp"
#include "racg/graph.hpp"
#include "racg/graph_io.hpp"
#include "racg/join_analysis.hpp"
#include "racg/random_lab.hpp"
#include "racg/serialize.hpp"
#include "racg/squares.hpp"
#include "racg/vertex_set.hpp"
