#pragma once

#include "hypdesc/counterexample.hpp"
#include "hypdesc/descent.hpp"
#include "hypdesc/formdoc.hpp"
#include "hypdesc/invariants.hpp"
#include "hypdesc/normsolve.hpp"
#include "hypdesc/octavic.hpp"
