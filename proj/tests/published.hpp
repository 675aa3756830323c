#pragma once

#include "tropbasis/trop_core.hpp"

#include <vector>

namespace tropbasis::testdata {

inline TropicalMatrix example_a() { return TropicalMatrix::from_ints({{0, 1, 2}, {1, 1, 1}, {0, 1, 1}}); }

inline TropicalMatrix ray_first(int sign) {
    auto m = TropicalMatrix::from_ints({{16, -4, -4, -4, -4},
                                        {-4, 1, 1, 1, 1},
                                        {-4, 1, 1, 1, 1},
                                        {-4, 1, 1, 1, 1},
                                        {-4, 1, 1, 1, 1}});
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m(i, j) *= sign;
    return m;
}

inline TropicalMatrix ray_second() {
    return TropicalMatrix::from_ints({{-4, -4, -4, 6, 6},
                                      {-4, -4, -4, 6, 6},
                                      {-4, -4, -4, 6, 6},
                                      {6, 6, 6, -9, -9},
                                      {6, 6, 6, -9, -9}});
}

inline TropicalMatrix ray_third() {
    return TropicalMatrix::from_ints({{-3, -3, -3, 7, 2},
                                      {-3, -3, -3, 7, 2},
                                      {-3, -3, -3, 7, 2},
                                      {7, 7, 7, -8, -13},
                                      {2, 2, 2, -13, 7}});
}

inline TropicalMatrix ray_fourth() {
    return TropicalMatrix::from_ints({{3, 3, -7, -7, 8},
                                      {3, 3, -7, -7, 8},
                                      {-7, -7, 8, 8, -2},
                                      {-7, -7, 8, 8, -2},
                                      {8, 8, -2, -2, -12}});
}

inline TropicalMatrix ray_vec2() {
    return TropicalMatrix::from_ints({{-2, -2, 0, 2, 2},
                                      {-2, -2, 0, 2, 2},
                                      {0, 0, 2, -1, -1},
                                      {2, 2, -1, 1, -4},
                                      {2, 2, -1, -4, 1}});
}

/// +first, -first, second, third, fourth, vec2.
inline std::vector<TropicalMatrix> published_rays() {
    return {ray_first(1), ray_first(-1), ray_second(), ray_third(), ray_fourth(), ray_vec2()};
}

}  // namespace tropbasis::testdata
