#pragma once

#include "imc/chain.hpp"
#include "imc/classify.hpp"
#include "imc/errors.hpp"
#include "imc/gamble.hpp"
#include "imc/limit.hpp"
#include "imc/matrix.hpp"
#include "imc/polytope.hpp"
#include "imc/reliability.hpp"
#include "imc/set_chain.hpp"
#include "imc/settings.hpp"
#include "imc/state_space.hpp"
#include "imc/transition.hpp"
#include "imc/uncertainty_model.hpp"
