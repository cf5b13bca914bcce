#pragma once

#include <cstdint>
#include <vector>

#include "fuchsian/arith.hpp"

namespace fuchsian {

// p[x] is the image of point x.
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t degree);
Perm perm_compose(const Perm& first, const Perm& then);
Perm perm_inverse(const Perm& p);
bool perm_is_identity(const Perm& p);

// Deterministic Schreier-Sims. When known_multiple is given (a multiple of
// the order, e.g. the ambient group order) the search stops as soon as the
// partial chain reaches it.
BigInt permutation_group_order(const std::vector<Perm>& gens, std::size_t degree,
                               const BigInt& ambient_order = 0);

}  // namespace fuchsian
