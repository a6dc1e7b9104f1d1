#pragma once

// Umbrella header.

#include "xmjacobi/errors.hpp"
#include "xmjacobi/family.hpp"
#include "xmjacobi/gamma.hpp"
#include "xmjacobi/hyp2f1.hpp"
#include "xmjacobi/io.hpp"
#include "xmjacobi/jacobi.hpp"
#include "xmjacobi/numerov.hpp"
#include "xmjacobi/orthogonality.hpp"
#include "xmjacobi/polynomial.hpp"
#include "xmjacobi/potential.hpp"
#include "xmjacobi/prepotential.hpp"
#include "xmjacobi/scattering.hpp"
