#pragma once

#include "brcycle/analysis.hpp"
#include "brcycle/digraph.hpp"
#include "brcycle/error.hpp"
#include "brcycle/finders.hpp"
#include "brcycle/graph_core.hpp"
#include "brcycle/graph_io.hpp"
#include "brcycle/harness.hpp"
#include "brcycle/knowledge.hpp"
#include "brcycle/naive_coloring.hpp"
#include "brcycle/oracle.hpp"
#include "brcycle/rng.hpp"
