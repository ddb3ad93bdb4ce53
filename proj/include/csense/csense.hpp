#ifndef CSENSE_CSENSE_HPP
#define CSENSE_CSENSE_HPP

#include "csense/compare.hpp"
#include "csense/dct.hpp"
#include "csense/error.hpp"
#include "csense/fft.hpp"
#include "csense/image.hpp"
#include "csense/json_io.hpp"
#include "csense/optimize/bfgs.hpp"
#include "csense/optimize/common.hpp"
#include "csense/optimize/continuation.hpp"
#include "csense/optimize/lasso_cd.hpp"
#include "csense/optimize/lbfgs.hpp"
#include "csense/optimize/least_squares.hpp"
#include "csense/optimize/newton.hpp"
#include "csense/optimize/owlqn.hpp"
#include "csense/reconstruct.hpp"
#include "csense/rng.hpp"
#include "csense/sampling.hpp"
#include "csense/synth.hpp"
#include "csense/theta.hpp"
#include "csense/types.hpp"

#endif  // CSENSE_CSENSE_HPP
