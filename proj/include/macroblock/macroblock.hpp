#pragma once

#include "macroblock/blocking.hpp"
#include "macroblock/config.hpp"
#include "macroblock/curve_table.hpp"
#include "macroblock/distribution.hpp"
#include "macroblock/engine.hpp"
#include "macroblock/error.hpp"
#include "macroblock/geometry.hpp"
#include "macroblock/io/config_parser.hpp"
#include "macroblock/io/csv.hpp"
#include "macroblock/io/svg.hpp"
#include "macroblock/oracle.hpp"
#include "macroblock/placement.hpp"
#include "macroblock/rng.hpp"
#include "macroblock/sinr.hpp"
#include "macroblock/snr.hpp"
