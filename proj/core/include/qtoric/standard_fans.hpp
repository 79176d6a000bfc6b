#pragma once

// Hand-built fans of familiar toric varieties.

#include <cstddef>

#include "qtoric/fan.hpp"

namespace qtoric::fans {

/// P^n with rays e_1, ..., e_n, -(e_1 + ... + e_n).
Fan projective_space(std::size_t n);

/// Rays of `a` (padded with zeros) followed by rays of `b`.
Fan product(const Fan& a, const Fan& b);

/// Hirzebruch surface F_a: rays (1,0), (-1,a), (0,1), (0,-1).
Fan hirzebruch(long a);

/// Star subdivision of `sigma`: the blow-up along the orbit closure of sigma.
/// The new ray sum(sigma) is appended last.
Fan blow_up(const Fan& fan, const IndexSet& sigma);

// The two-dimensional corpus, with the ray orders used throughout the tests.
Fan projective_plane();       // (1,0), (0,1), (-1,-1)
Fan p1_x_p1();                // (1,0), (-1,0), (0,1), (0,-1)
Fan blown_up_plane_1();       // (1,0), (0,1), (-1,-1), (1,1)
Fan blown_up_plane_2();       // ... , (-1,0)
Fan blown_up_plane_3();       // +-(1,0), +-(0,1), +-(1,1)

}  // namespace qtoric::fans
