#pragma once

// Group recipes and tuples shared by the unit and acceptance tests.

namespace fixtures
{

inline constexpr char const *z3xz3 = "product(cyclic(3), cyclic(3))";

inline constexpr char const *g128_36 =
  "pc([2,2,2,2,2,2,2], g1^2 = g4, g2^2 = g5, g2^g1 = g2*g3, g3^g1 = g3*g6,"
  " g3^g2 = g3*g7, g4^g2 = g4*g6, g5^g1 = g5*g7)";

inline constexpr char const *z2cube_z4 =
  "semidirect(product(cyclic(2), cyclic(2), cyclic(2)), cyclic(4), [g1*g3, g2, g3])";

inline constexpr char const *psl27 = "perm((1,2,3,4,5,6,7), (2,3,5)(4,7,6), (1,8)(2,7)(3,4)(5,6))";

// Tuples as words in the recipe generators.
inline constexpr char const *g128_tc[] = {"g1*g2*g4*g6", "g1*g4*g5*g6", "g2*g3*g4*g7"};
inline constexpr char const *g128_td[] = {"g1*g2*g3*g6*g7", "g2*g5*g7", "g1*g3*g4*g7"};
inline constexpr char const *g128_kernel[] = {"g7", "g6", "g3*g4", "g4*g5"};

inline constexpr char const *z2cube_z4_tc[] = {"g1*g4^2", "g1*g2*g3*g4^2", "g2*g4", "g3*g4^3"};
inline constexpr char const *z2cube_z4_td[] = {"g1*g2", "g1", "g1*g4^3", "g1*g2*g3*g4"};
inline constexpr char const *z2cube_z4_h1[] = {"g1", "g3", "g2*g4^2"};
inline constexpr char const *z2cube_z4_h2[] = {"g1*g2", "g3", "g2*g4^2"};

} // namespace fixtures
