#pragma once

// Reference vertex and lower-bound parameter tables, transcribed as exact
// fractions.

#include <vector>

namespace reference {

/// theta_2..theta_10 of the 26 extreme points in dimension 10, in the
/// reference row order.
inline const std::vector<std::vector<double>> kVertexThetaD10 = {
    {1.0 / 9, 2.0 / 9, 11.0 / 63, 8.0 / 63, 11.0 / 63, 2.0 / 9, 1.0 / 9, 0.0, 1.0},
    {1.0 / 15, 2.0 / 15, 1.0 / 21, -4.0 / 105, -17.0 / 525, -2.0 / 75, -13.0 / 75, -8.0 / 25, 3.0 / 5},
    {1.0 / 45, 1.0 / 15, -1.0 / 105, -4.0 / 63, -1.0 / 105, 1.0 / 15, 1.0 / 45, 0.0, 1.0},
    {-1.0 / 45, 1.0 / 45, -1.0 / 63, -2.0 / 63, 1.0 / 35, 1.0 / 15, -1.0 / 15, -4.0 / 15, 1.0 / 3},
    {-1.0 / 15, 0.0, 1.0 / 105, 0.0, 1.0 / 105, 0.0, -1.0 / 15, 0.0, 1.0},
    {1.0 / 3, 1.0 / 3, 5.0 / 21, 2.0 / 7, 1.0 / 3, 5.0 / 21, 5.0 / 21, 4.0 / 7, -3.0 / 7},
    {11.0 / 45, 8.0 / 45, 1.0 / 45, 0.0, -1.0 / 45, -8.0 / 45, -11.0 / 45, 0.0, -1.0},
    {7.0 / 45, 1.0 / 15, -1.0 / 15, -2.0 / 45, 1.0 / 75, -1.0 / 75, 17.0 / 225, 12.0 / 25, -1.0 / 5},
    {1.0 / 15, 0.0, -1.0 / 15, 0.0, 1.0 / 15, 0.0, -1.0 / 15, 0.0, -1.0},
    {-1.0 / 45, -1.0 / 45, -1.0 / 63, 2.0 / 63, 1.0 / 35, -1.0 / 15, -1.0 / 15, 4.0 / 15, 1.0 / 3},
    {5.0 / 9, 1.0 / 3, 1.0 / 3, 4.0 / 9, 1.0 / 3, 1.0 / 3, 5.0 / 9, 0.0, 1.0},
    {19.0 / 45, 2.0 / 15, 1.0 / 21, 4.0 / 63, -13.0 / 105, -22.0 / 105, -29.0 / 315, -24.0 / 35, 1.0 / 7},
    {13.0 / 45, 0.0, -1.0 / 15, 0.0, -1.0 / 15, 0.0, 13.0 / 45, 0.0, 1.0},
    {7.0 / 45, -1.0 / 15, -1.0 / 15, 2.0 / 45, 1.0 / 75, 1.0 / 75, 17.0 / 225, -12.0 / 25, -1.0 / 5},
    {1.0 / 45, -1.0 / 15, -1.0 / 105, 4.0 / 63, -1.0 / 105, -1.0 / 15, 1.0 / 45, 0.0, 1.0},
    {7.0 / 9, 2.0 / 9, 5.0 / 9, 4.0 / 9, 1.0 / 3, 2.0 / 3, 1.0 / 9, 8.0 / 9, -1.0 / 9},
    {3.0 / 5, 0.0, 1.0 / 5, 0.0, -1.0 / 5, 0.0, -3.0 / 5, 0.0, -1.0},
    {19.0 / 45, -2.0 / 15, 1.0 / 21, -4.0 / 63, -13.0 / 105, 22.0 / 105, -29.0 / 315, 24.0 / 35, 1.0 / 7},
    {11.0 / 45, -8.0 / 45, 1.0 / 45, 0.0, -1.0 / 45, 8.0 / 45, -11.0 / 45, 0.0, -1.0},
    {1.0 / 15, -2.0 / 15, 1.0 / 21, 4.0 / 105, -17.0 / 525, 2.0 / 75, -13.0 / 75, 8.0 / 25, 3.0 / 5},
    {1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0},
    {7.0 / 9, -2.0 / 9, 5.0 / 9, -4.0 / 9, 1.0 / 3, -2.0 / 3, 1.0 / 9, -8.0 / 9, -1.0 / 9},
    {5.0 / 9, -1.0 / 3, 1.0 / 3, -4.0 / 9, 1.0 / 3, -1.0 / 3, 5.0 / 9, 0.0, 1.0},
    {1.0 / 3, -1.0 / 3, 5.0 / 21, -2.0 / 7, 1.0 / 3, -5.0 / 21, 5.0 / 21, -4.0 / 7, -3.0 / 7},
    {1.0 / 9, -2.0 / 9, 11.0 / 63, -8.0 / 63, 11.0 / 63, -2.0 / 9, 1.0 / 9, 0.0, 1.0},
    {-1.0 / 9, 0.0, 1.0 / 21, 0.0, -1.0 / 21, 0.0, 1.0 / 9, 0.0, -1.0},
};

/// Lower-bound theta_2..theta_d for d = 2..12 (index d - 2).
inline const std::vector<std::vector<double>> kLowerBoundTheta = {
    {-1.0},
    {-1.0 / 3, 0.0},
    {-1.0 / 3, 0.0, 1.0},
    {-1.0 / 5, 0.0, 1.0 / 5, 0.0},
    {-1.0 / 5, 0.0, 1.0 / 5, 0.0, -1.0},
    {-1.0 / 7, 0.0, 3.0 / 35, 0.0, -1.0 / 7, 0.0},
    {-1.0 / 7, 0.0, 3.0 / 35, 0.0, -1.0 / 7, 0.0, 1.0},
    {-1.0 / 9, 0.0, 1.0 / 21, 0.0, -1.0 / 21, 0.0, 1.0 / 9, 0.0},
    {-1.0 / 9, 0.0, 1.0 / 21, 0.0, -1.0 / 21, 0.0, 1.0 / 9, 0.0, -1.0},
    {-1.0 / 11, 0.0, 1.0 / 33, 0.0, -5.0 / 231, 0.0, 1.0 / 33, 0.0, -1.0 / 11, 0.0},
    {-1.0 / 11, 0.0, 1.0 / 33, 0.0, -5.0 / 231, 0.0, 1.0 / 33, 0.0, -1.0 / 11, 0.0, 1.0},
};

}  // namespace reference
