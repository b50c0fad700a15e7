#pragma once

#include <tuple>
#include <utility>
#include <vector>

namespace spechtlab::printed {

// Smallest s (by parity) with S^(n-s,s) not uniserial, indexed by n mod 32.
inline const std::vector<int> kWitnessEven{6, 12, 8, 24, 4, 14, 6, 26, 6, 8, 8, 28, 4, 10, 6, 30,
                                           6, 12, 8, 16, 4, 14, 6, 18, 6, 8, 8, 20, 4, 10, 6, 22};
inline const std::vector<int> kWitnessOdd{7, 23, 7, 13, 9, 25, 5, 15, 7, 27, 7, 9, 9, 29, 5, 11,
                                          7, 31, 7, 13, 9, 17, 5, 15, 7, 19, 7, 9, 9, 21, 5, 11};

// Rows (n mod 2^{L(r)}, r) where the hook has a unique minimal submodule, r < 29.
inline const std::vector<std::pair<int, int>> kUniqueMin{{0, 0},   {0, 1},   {1, 1},   {0, 2},   {1, 2},  {2, 2},  {2, 3},
                                                         {3, 3},   {0, 4},   {4, 4},   {5, 6},   {6, 7},  {7, 7},  {0, 8},
                                                         {8, 8},   {13, 14}, {14, 15}, {15, 15}, {0, 16}, {16, 16}};

// Rows of that table split by whether a filtration witness s exists, as (residue, r, s) and (residue, r).
inline const std::vector<std::tuple<int, int, int>> kWithWitness{{4, 4, 4},    {6, 7, 5},    {0, 8, 6},
                                                                 {8, 8, 6},    {13, 14, 10}, {14, 15, 5},
                                                                 {15, 15, 11}, {0, 16, 6},   {16, 16, 6}};
inline const std::vector<std::pair<int, int>> kWithoutWitness{{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2},
                                                              {2, 3}, {3, 3}, {0, 4}, {5, 6}, {7, 7}};

}  // namespace spechtlab::printed
