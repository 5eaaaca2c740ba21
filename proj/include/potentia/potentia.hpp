#pragma once

// Umbrella header: detection of potential games via the potential equation,
// the bi-matrix criteria, and the minimal verification system; potential
// recovery in closed form; orthogonal projection onto the potential
// subspace; and pure Nash equilibria of potential games.

#include "potentia/bimatrix.hpp"
#include "potentia/check.hpp"
#include "potentia/decomposition.hpp"
#include "potentia/errors.hpp"
#include "potentia/game.hpp"
#include "potentia/game_io.hpp"
#include "potentia/matrix.hpp"
#include "potentia/minimal_system.hpp"
#include "potentia/nash.hpp"
#include "potentia/potential.hpp"
