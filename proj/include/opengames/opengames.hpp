#pragma once

#include "opengames/core.hpp"
#include "opengames/dynamics.hpp"
#include "opengames/functor.hpp"
#include "opengames/game.hpp"
#include "opengames/learn.hpp"
#include "opengames/random.hpp"
