#pragma once

#include <string>
#include <vector>

namespace plauslab {

std::vector<std::string> demo_names();

// Scripted reproduction of a named claim; the text is deterministic.
// Unknown names throw std::invalid_argument.
std::string run_demo(const std::string& name);

}  // namespace plauslab
