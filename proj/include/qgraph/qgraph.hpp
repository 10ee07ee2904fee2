#pragma once

#include "qgraph/algebra.hpp"
#include "qgraph/coloring.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/io.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/operator_space.hpp"
#include "qgraph/quantum_graph.hpp"
#include "qgraph/spectra.hpp"
