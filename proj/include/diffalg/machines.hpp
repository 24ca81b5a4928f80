#pragma once

#include "diffalg/minsky.hpp"

#include <string>
#include <vector>

namespace diffalg {

struct BundledMachine {
    std::string name;
    std::string description;
    Machine machine;
    bool acyclic; // known by construction (monotone counter arguments)
};

// Handcrafted example machines used across tests and docs.
const std::vector<BundledMachine>& bundled_machines();
const Machine& bundled_machine(const std::string& name);

} // namespace diffalg
