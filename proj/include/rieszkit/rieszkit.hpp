#pragma once

#include "rieszkit/clifford.hpp"
#include "rieszkit/config.hpp"
#include "rieszkit/extrapolation.hpp"
#include "rieszkit/harmonic.hpp"
#include "rieszkit/identities.hpp"
#include "rieszkit/kernels.hpp"
#include "rieszkit/mesh.hpp"
#include "rieszkit/operators.hpp"
#include "rieszkit/parallel.hpp"
#include "rieszkit/polynomial.hpp"
#include "rieszkit/regularity.hpp"
#include "rieszkit/spherical.hpp"
#include "rieszkit/verify.hpp"
