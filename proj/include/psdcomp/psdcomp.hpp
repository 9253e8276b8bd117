#ifndef PSDCOMP_PSDCOMP_HPP_
#define PSDCOMP_PSDCOMP_HPP_

#include "psdcomp/error.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/linalg.hpp"
#include "psdcomp/partial_matrix.hpp"
#include "psdcomp/feasibility.hpp"
#include "psdcomp/hankel_rays.hpp"
#include "psdcomp/completion.hpp"
#include "psdcomp/moments.hpp"

#endif  // PSDCOMP_PSDCOMP_HPP_
