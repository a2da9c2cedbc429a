#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/connectivity.hpp"
#include "latnet/errors.hpp"
#include "latnet/experiment.hpp"
#include "latnet/io.hpp"
#include "latnet/lsar.hpp"
#include "latnet/netgen.hpp"
#include "latnet/rng.hpp"
#include "latnet/simulate.hpp"
#include "latnet/spectral.hpp"
#include "latnet/types.hpp"
