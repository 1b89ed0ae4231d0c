#pragma once

#include "trafficflow/clusters.hpp"
#include "trafficflow/density.hpp"
#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"
#include "trafficflow/lattice.hpp"
#include "trafficflow/measures.hpp"
#include "trafficflow/rational.hpp"
#include "trafficflow/sawtooth.hpp"
#include "trafficflow/substitution.hpp"
#include "trafficflow/tracer.hpp"
