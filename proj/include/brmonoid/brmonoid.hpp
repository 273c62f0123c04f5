#pragma once

// Modifications of finite groups, semigroup 0-cohomology, and the relative
// Brauer monoid of a finite field extension, with a machine check of the
// unit-elimination exact sequence.

#include "brmonoid/abelian.hpp"
#include "brmonoid/brauer_monoid.hpp"
#include "brmonoid/cohomology.hpp"
#include "brmonoid/errors.hpp"
#include "brmonoid/exact_sequence.hpp"
#include "brmonoid/galois.hpp"
#include "brmonoid/group.hpp"
#include "brmonoid/int_matrix.hpp"
#include "brmonoid/json_io.hpp"
#include "brmonoid/lattice.hpp"
#include "brmonoid/modification.hpp"
#include "brmonoid/zero_module.hpp"

namespace brm {
inline constexpr const char* version = "0.1.0";
}
