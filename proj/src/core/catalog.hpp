#pragma once

// Shipped form catalog: delta (level 1, weight 12), eta11 (level 11, weight 2,
// with the conductor-11 elliptic curve as a cross-check oracle), eta5
// (level 5, weight 4), and ell11 (the same level-11 form built purely from
// point counts).  Tables are cached per process and grown on demand.

#include "core/newform.hpp"

namespace rsw {

const std::vector<NewformSpec>& catalog();
const NewformSpec& catalog_form(const std::string& label);  // throws for unknown labels

// Shared immutable table covering at least [1, min_n].
std::shared_ptr<const EigenvalueTable> catalog_table(const std::string& label, u64 min_n);

}  // namespace rsw
