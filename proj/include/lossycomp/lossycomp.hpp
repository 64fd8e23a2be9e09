#pragma once

#include "lossycomp/error.hpp"
#include "lossycomp/hyperedge.hpp"
#include "lossycomp/hypergraph.hpp"
#include "lossycomp/info.hpp"
#include "lossycomp/matrix.hpp"
#include "lossycomp/model.hpp"
#include "lossycomp/oracle.hpp"
#include "lossycomp/point_io.hpp"
#include "lossycomp/rng.hpp"
#include "lossycomp/simulator.hpp"
#include "lossycomp/solver.hpp"
#include "lossycomp/spec_io.hpp"

namespace lossycomp {
inline constexpr const char* kVersion = "0.1.0";
}
