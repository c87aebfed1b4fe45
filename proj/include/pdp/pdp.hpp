#pragma once

#include "pdp/corpus.hpp"
#include "pdp/dp_solver.hpp"
#include "pdp/error.hpp"
#include "pdp/flow.hpp"
#include "pdp/generators.hpp"
#include "pdp/instance.hpp"
#include "pdp/oracle.hpp"
#include "pdp/pipeline.hpp"
#include "pdp/plane_graph.hpp"
#include "pdp/reduction.hpp"
#include "pdp/steiner.hpp"
#include "pdp/treewidth.hpp"
#include "pdp/vertex_cut.hpp"
#include "pdp/weak_linkage.hpp"
