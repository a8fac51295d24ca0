#pragma once

#include "orchard/io/arclist.hpp"
#include "orchard/io/enewick.hpp"
#include "orchard/io/profile_csv.hpp"
