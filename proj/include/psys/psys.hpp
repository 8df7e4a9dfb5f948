#pragma once

#include "psys/attribute_table.hpp"
#include "psys/chem.hpp"
#include "psys/decimal.hpp"
#include "psys/dot.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"
#include "psys/fraction.hpp"
#include "psys/hypergraph.hpp"
#include "psys/io.hpp"
#include "psys/periodic_system.hpp"
#include "psys/poset.hpp"
#include "psys/spearman.hpp"
