#pragma once

// Umbrella header for the pact toolkit: process terms and formulas, the
// model-file format, both SOS engines, partial-bisimulation checking and
// the supervisory-control layer.

#include "pact/action.hpp"
#include "pact/effect.hpp"
#include "pact/errors.hpp"
#include "pact/examples.hpp"
#include "pact/export.hpp"
#include "pact/formula.hpp"
#include "pact/lts.hpp"
#include "pact/model.hpp"
#include "pact/parser.hpp"
#include "pact/pbisim.hpp"
#include "pact/printer.hpp"
#include "pact/semantics_event.hpp"
#include "pact/semantics_state.hpp"
#include "pact/supervisory.hpp"
#include "pact/term.hpp"
