#pragma once

#include "interlace/error.hpp"
#include "interlace/euler.hpp"
#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"
#include "interlace/interlace.hpp"
#include "interlace/labels.hpp"
#include "interlace/partitions.hpp"
#include "interlace/permutations.hpp"
#include "interlace/polynomial.hpp"
#include "interlace/polynomials.hpp"
