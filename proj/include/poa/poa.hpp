#pragma once

#include "poa/errors.hpp"
#include "poa/orders.hpp"
#include "poa/extensions.hpp"
#include "poa/metrics.hpp"
#include "poa/solvers.hpp"
#include "poa/graph.hpp"
#include "poa/mis3.hpp"
#include "poa/sat32.hpp"
#include "poa/lred.hpp"
#include "poa/generate.hpp"
#include "poa/io.hpp"
