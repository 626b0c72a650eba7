#pragma once

#include <string>
#include <vector>

namespace ffm {

struct SelfCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Small-parameter versions of the structural invariants: ensemble sizes,
// reciprocity, the two L-polynomial constructions, functional equation and
// Weil bound, the Q_1 contour, pole cancellation in the ratios, zero counting,
// cache round trip and thread independence. Exceptions become failed checks.
std::vector<SelfCheck> run_selftest(int threads = 1);

}  // namespace ffm
