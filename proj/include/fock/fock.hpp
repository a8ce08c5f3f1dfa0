#pragma once

// Umbrella header: norm and concentration bounds for radial Toeplitz and
// localization operators on the Bargmann–Fock space, plus the supporting
// special functions, planar geometry, and time-frequency transforms.

#include "fock/common.hpp"
#include "fock/concentration.hpp"
#include "fock/gamma_mass.hpp"
#include "fock/geometry.hpp"
#include "fock/io.hpp"
#include "fock/moments.hpp"
#include "fock/quadrature.hpp"
#include "fock/report.hpp"
#include "fock/specfun.hpp"
#include "fock/symbols.hpp"
#include "fock/timefreq.hpp"
