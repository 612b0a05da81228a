#pragma once
// Contingency tables of total seven used as fixed examples, rows listed top first.

#include <vector>

namespace known {

using Display = std::vector<std::vector<int>>;

/// The S7 face (I = {s1,s2,s3,s5}, u = 7123546, J = {s2,s3,s6}).
inline const Display kS7Table = {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 3, 0, 1}};
inline const std::vector<int> kS7Word = {7, 1, 4, 2, 5, 3, 6};
inline const std::vector<int> kS7Minimal = {7, 1, 2, 3, 5, 4, 6};

inline const std::vector<Display> kS7UpperCovers = {
    {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 3, 0, 1}},
    {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 3, 0, 1}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {0, 3, 0, 0}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 0}, {0, 2, 0, 1}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 2, 0, 0}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 0}, {0, 1, 0, 1}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 2, 0, 1}, {0, 1, 0, 0}},
    {{1, 0, 0, 0}, {0, 0, 1, 1}, {0, 3, 0, 0}, {0, 0, 0, 1}},
    {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 1}, {0, 1, 2, 0, 1}},
    {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 1}, {0, 2, 1, 0, 1}},
    {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 1}, {0, 3, 0, 1, 0}},
    {{1, 0, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 3, 0, 0, 1}},
};

inline const std::vector<Display> kS7LowerCovers = {
    {{1, 0, 1, 1}, {0, 3, 0, 1}},
    {{1, 0, 0, 0}, {0, 3, 1, 2}},
    {{1, 0, 0}, {0, 1, 1}, {3, 0, 1}},
    {{1, 0, 0}, {0, 1, 1}, {0, 3, 1}},
    {{1, 0, 0}, {0, 0, 2}, {0, 3, 1}},
};

/// n = 6 table whose columns read off ({4,5},{3,6},{1},{2}).
inline const Display kPartitionTable = {{0, 1, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0},
                                        {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};

} // namespace known
