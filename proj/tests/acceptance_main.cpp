#include <iostream>

#include "kch/acceptance.hpp"

int main() {
    const bool ok = kch::run_acceptance(std::cout);
    std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << std::endl;
    return ok ? 0 : 1;
}
