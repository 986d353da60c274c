#pragma once

#include "k3m/errors.hpp"
#include "k3m/exactmath/inertia.hpp"
#include "k3m/exactmath/matrix.hpp"
#include "k3m/exactmath/normal_form.hpp"
#include "k3m/exactmath/quad_scalar.hpp"
#include "k3m/exactmath/rational.hpp"
#include "k3m/gk3/gk3.hpp"
#include "k3m/io/json_io.hpp"
#include "k3m/io/reports.hpp"
#include "k3m/lattice/gauss.hpp"
#include "k3m/lattice/hyperbolic.hpp"
#include "k3m/lattice/lattice.hpp"
#include "k3m/lattice/sublattice.hpp"
#include "k3m/mirror/mirror.hpp"
#include "k3m/mukai/classes.hpp"
#include "k3m/mukai/gcy.hpp"
#include "k3m/rigidity/rigidity.hpp"
