#pragma once

#include "algebraic.hpp"
#include "cache.hpp"
#include "config.hpp"
#include "dimension.hpp"
#include "dot.hpp"
#include "ifs.hpp"
#include "loop_classes.hpp"
#include "net_structure.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "transition.hpp"
