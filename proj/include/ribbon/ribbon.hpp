#pragma once

#include "ribbon/crossings.hpp"
#include "ribbon/curve.hpp"
#include "ribbon/errors.hpp"
#include "ribbon/fixtures.hpp"
#include "ribbon/framing.hpp"
#include "ribbon/invariants.hpp"
#include "ribbon/io.hpp"
#include "ribbon/sphere.hpp"
#include "ribbon/svg.hpp"
#include "ribbon/tolerances.hpp"
#include "ribbon/vec3.hpp"
#include "ribbon/writhe_framing.hpp"
