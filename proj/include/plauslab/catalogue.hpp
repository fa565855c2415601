#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plauslab/plausibility.hpp"

namespace plauslab {

// Every qualitative measure on `worlds` points whose poset has at most
// `middle` elements strictly between ⊥ and ⊤, up to what conditionals can
// observe: which sets are ⊥, and which disjoint pairs are strictly ordered.
// One representative per behaviour, one behaviour per world permutation
// class. The degenerate measure with ⊤ = ⊥ comes first.
const std::vector<std::shared_ptr<const FiniteMeasure>>& qualitative_catalogue(int worlds, int middle = 4);

// The observable behaviour used for deduplication, for the given world order.
std::string conditional_signature(const SetPlausibility& pl, const std::vector<int>& perm = {});

}  // namespace plauslab
