#pragma once

// Four-digit tabulated values for n = 3, mu = 1.1, used by --check and the acceptance run.

#include <array>

namespace ripplet::reference {

// mask coefficients a^(3,m)_alpha, alpha = 0, 1, 2, m = 0..8
inline constexpr std::array<std::array<double, 9>, 3> mask_table{{
    {0.5, 0.0313, 0.0452, 0.0508, 0.0537, 0.0555, 0.0567, 0.0576, 0.0583},
    {0.5, 0.2500, 0.2500, 0.2500, 0.2500, 0.2500, 0.2500, 0.2500, 0.2500},
    {0.0, 0.4375, 0.4095, 0.3984, 0.3925, 0.3889, 0.3865, 0.3848, 0.3835},
}};

// dual coefficients ã^(3,m)_alpha, alpha = 0..7, m = 0..8
inline constexpr std::array<std::array<double, 9>, 8> dual_table{{
    {0.5, 0.0011, 0.0021, 0.0026, 0.0030, 0.0064, 0.0034, 0.0035, 0.0036},
    {0.5, -0.0085, -0.0114, -0.0129, -0.0138, -0.0288, -0.0148, -0.0151, -0.0154},
    {0.0, 0.0066, 0.0028, 0.0005, -0.0010, -0.0039, -0.0027, -0.0032, -0.0036},
    {0.0, 0.0574, 0.0760, 0.0857, 0.0914, 0.1905, 0.0979, 0.0999, 0.1014},
    {0.0, -0.0810, -0.0790, -0.0768, -0.0752, -0.1480, -0.0732, -0.0725, -0.0720},
    {0.0, -0.1998, -0.5108, -0.2834, -0.2998, -0.6211, -0.3180, -0.3236, -0.3278},
    {0.0, 0.3233, 0.3241, 0.3237, 0.3232, 0.6456, 0.3225, 0.3222, 0.3220},
    {0.0, 0.8019, 0.8816, 0.9212, 0.9443, 1.9187, 0.9698, 0.9776, 0.9835},
}};

// columns of dual_table that are not compared digit by digit
inline constexpr bool dual_column_excluded(int m) { return m == 0 || m == 5; }

// |g^(3,0)_alpha| for alpha = -1, -2, -3, -4, and the tabulated signs
inline constexpr std::array<double, 4> gramian_magnitudes{0.3244, 0.1479, 0.0259, 0.0015};
inline constexpr std::array<int, 4> gramian_signs{+1, -1, +1, -1};

// nonzero counts after a three-level analysis of a spike
inline constexpr long spike_nonzero_nonstationary = 26;
inline constexpr long spike_nonzero_stationary = 39;

inline constexpr double four_digit_tol = 5e-5 + 1e-12;

}  // namespace ripplet::reference
