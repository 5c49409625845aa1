#pragma once

#include "netopt/error.hpp"
#include "netopt/experiment.hpp"
#include "netopt/format.hpp"
#include "netopt/generators.hpp"
#include "netopt/graph.hpp"
#include "netopt/io.hpp"
#include "netopt/measures.hpp"
#include "netopt/rng.hpp"
#include "netopt/strategies.hpp"
#include "netopt/version.hpp"
