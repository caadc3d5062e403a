#pragma once

#include "opengames/core/enumerate.hpp"
#include "opengames/core/error.hpp"
#include "opengames/core/map.hpp"
#include "opengames/core/point.hpp"
#include "opengames/core/relation.hpp"
#include "opengames/core/space.hpp"
