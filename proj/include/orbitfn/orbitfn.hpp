#pragma once

#include "orbitfn/errors.hpp"
#include "orbitfn/types.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/weyl_group.hpp"
#include "orbitfn/orbit_functions.hpp"
#include "orbitfn/exp_ring.hpp"
#include "orbitfn/verify.hpp"
#include "orbitfn/serialize.hpp"
