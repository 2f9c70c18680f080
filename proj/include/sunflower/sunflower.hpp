#pragma once

#include "sunflower/cardinality.hpp"
#include "sunflower/detector.hpp"
#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_lemma.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/fn_table.hpp"
#include "sunflower/gadget.hpp"
#include "sunflower/oracles.hpp"
#include "sunflower/padding.hpp"
#include "sunflower/pairing.hpp"
#include "sunflower/same_size.hpp"
#include "sunflower/text_io.hpp"
#include "sunflower/tree.hpp"
