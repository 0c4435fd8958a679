#pragma once

#include "wllab/caps.hpp"
#include "wllab/coherent.hpp"
#include "wllab/errors.hpp"
#include "wllab/generators.hpp"
#include "wllab/graph.hpp"
#include "wllab/graph_doc.hpp"
#include "wllab/isomorphism.hpp"
#include "wllab/matrix.hpp"
#include "wllab/partition.hpp"
#include "wllab/refine.hpp"
#include "wllab/spas.hpp"
#include "wllab/tuples.hpp"
