#pragma once

#include "alignbandit/agents.hpp"
#include "alignbandit/core.hpp"
#include "alignbandit/environment.hpp"
#include "alignbandit/harness/config.hpp"
#include "alignbandit/harness/experiment.hpp"
#include "alignbandit/harness/slope.hpp"
#include "alignbandit/harness/verify.hpp"
#include "alignbandit/ids_solver.hpp"
#include "alignbandit/infotheory.hpp"
#include "alignbandit/random.hpp"
