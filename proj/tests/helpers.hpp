#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/basic_quiver.hpp"
#include "qcluster/lie_data.hpp"

namespace qtest {

using namespace qcluster;

inline ReducedWord word(LieType t, int n, std::vector<int> w,
                        ShortRootConvention c = ShortRootConvention::bourbaki) {
    return validate_reduced_word(cartan_datum(t, n, c), w);
}
inline ReducedWord a1() { return word(LieType::A, 1, {1}); }
inline ReducedWord a2() { return word(LieType::A, 2, {1, 2, 1}); }
inline ReducedWord a3() { return word(LieType::A, 3, {1, 2, 1, 3, 2, 1}); }
inline ReducedWord b2() { return word(LieType::B, 2, {1, 2, 1, 2}, ShortRootConvention::reversed); }
inline ReducedWord b3() {
    return word(LieType::B, 3, {1, 2, 1, 2, 3, 2, 1, 2, 3}, ShortRootConvention::reversed);
}

inline std::vector<std::string> labels(std::initializer_list<const char*> ls) {
    std::vector<std::string> out;
    for (const char* l : ls) out.push_back(normalize_label(l));
    return out;
}

// (source, target) pairs of every arrow
inline std::set<std::pair<std::string, std::string>> arrow_pairs(const ClusterSeed& s) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& a : quiver_view(s).arrows) out.insert({a.source, a.target});
    return out;
}

}  // namespace qtest
