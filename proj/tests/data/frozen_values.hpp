#pragma once

// Regression values for mu = sigma = Lebesgue on the unit ball of R^3,
// (n, p, q) = (3, 4, 0.5), grid h = 1/16, computed once with the scalar
// kernels. Compared with a +-5% band.
namespace frozen {

inline constexpr double kBand = 0.05;

inline constexpr double kLemma31Ratio = 0.43908976055062704;  // InteriorTrimmed stencil
inline constexpr double kLemma32Ratio = 0.097297856362504653;
inline constexpr double kCor12Ratio1 = 0.029343161689431456;
inline constexpr double kCor12Ratio2 = 0.021235797196951491;
inline constexpr double kN2 = 3.9813615859787177;
inline constexpr double kGmuNormDsigma = 0.35615276684093883;
inline constexpr double kLemma27Constant = 0.11752870235330279;  // seed 0, 20 samples
inline constexpr double kLemma27OnesRatio = 0.12963754298402116;
inline constexpr double kLemma28Ratio = 0.39871010362379811;

}  // namespace frozen
