#pragma once

#include "resbound/exact_linalg.hpp"

namespace resbound {

/// LLL reduction of linearly independent integer row vectors, with exact
/// rational Gram-Schmidt data. Deterministic; delta in (1/4, 1).
void lll_reduce(std::vector<IntVec> &basis, const mpq_class &delta);

} // namespace resbound
