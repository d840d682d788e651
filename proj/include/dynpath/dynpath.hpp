#ifndef DYNPATH_DYNPATH_HPP
#define DYNPATH_DYNPATH_HPP

// Umbrella header.

#include "dynpath/biconnectivity.hpp"
#include "dynpath/bipartite.hpp"
#include "dynpath/bounded_tw.hpp"
#include "dynpath/connectivity.hpp"
#include "dynpath/engines.hpp"
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/oracle.hpp"
#include "dynpath/path_automaton.hpp"
#include "dynpath/replay.hpp"
#include "dynpath/trace.hpp"
#include "dynpath/tree_decomposition.hpp"
#include "dynpath/treewidth.hpp"

#endif
