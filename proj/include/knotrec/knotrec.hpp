#pragma once

// Umbrella header.

#include "knotrec/arith.hpp"
#include "knotrec/coset.hpp"
#include "knotrec/covers.hpp"
#include "knotrec/diagram.hpp"
#include "knotrec/diagram_io.hpp"
#include "knotrec/errors.hpp"
#include "knotrec/finite_group.hpp"
#include "knotrec/montesinos.hpp"
#include "knotrec/moves.hpp"
#include "knotrec/presentation.hpp"
#include "knotrec/quotients.hpp"
#include "knotrec/recognizer.hpp"
#include "knotrec/seifert.hpp"
#include "knotrec/smith.hpp"
#include "knotrec/tangle.hpp"
#include "knotrec/twobridge.hpp"
