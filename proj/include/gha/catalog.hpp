#pragma once

#include <string>
#include <vector>

#include "gha/groupoid.hpp"

namespace gha {

std::vector<std::string> catalog_names();
// throws std::invalid_argument on an unknown name
GroupoidPtr catalog(const std::string& name);

std::vector<std::vector<int>> cyclic_table(int k);
std::vector<std::vector<int>> sym3_table();

}  // namespace gha
