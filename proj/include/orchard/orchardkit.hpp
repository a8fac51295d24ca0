#pragma once

#include "orchard/cherry.hpp"
#include "orchard/collision.hpp"
#include "orchard/enumerate.hpp"
#include "orchard/error.hpp"
#include "orchard/generator.hpp"
#include "orchard/isomorphism.hpp"
#include "orchard/netio.hpp"
#include "orchard/network.hpp"
#include "orchard/orchard.hpp"
#include "orchard/profile.hpp"
#include "orchard/reconstruct.hpp"
