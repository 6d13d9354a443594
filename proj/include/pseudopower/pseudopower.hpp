#pragma once

#include "bound_function.hpp"
#include "constants.hpp"
#include "context.hpp"
#include "expsum.hpp"
#include "ntheory.hpp"
#include "stats.hpp"
