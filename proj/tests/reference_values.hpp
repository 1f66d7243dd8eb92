#pragma once

// Generated by make_references.py (50-digit arithmetic); do not edit by hand.
// Each constant is the nearest double to the high-precision value.

namespace refs {

inline constexpr double annulus_a_l2_tau1 = -351.7117498054064226947;
inline constexpr double annulus_b_l2_tau1 = 81635.99562002698922035;
inline constexpr double annulus_c_l2_tau1 = -3648677.814031053552055;
inline constexpr double annulus_a_scaled_l2_tau1 = -0.8718062653892848337856;
inline constexpr double annulus_b_scaled_l2_tau1 = 202.3554018374672020137;
inline constexpr double annulus_c_scaled_l2_tau1 = -9044.168073483724518088;
inline constexpr double lambda_minus_l1_tau1_a05 = 8.910225830089472377436;
inline constexpr double lambda_plus_l1_tau1_a05 = 99.7499563407273658007;
inline constexpr double lambda_minus_l2_tau1_a05 = 60.42463981084192596458;
inline constexpr double lambda_plus_l2_tau1_a05 = 171.6858758747847407527;
inline constexpr double lambda_minus_l1_tau02_a03 = 1.799881260658398755697;
inline constexpr double lambda_plus_l1_tau02_a03 = 7429.818640444685481631;
inline constexpr double lambda0_plus_tau1_a05 = 67.11244879144520181784;
inline constexpr double lambda0_plus_tau02_a03 = 7257.121127061059990736;
inline constexpr double lambda0_plus_tau3_a08 = 12.46916844535802811089;
inline constexpr double tau_star_beta005 = 7.314766296985422054078;
inline constexpr double tau_star_beta015 = 2.841512850678462202335;
inline constexpr double tau_star_beta025 = 1.955227524086802409371;
inline constexpr double gap_ratio_beta025_tau1 = 0.1327656193529516308833;
inline constexpr double gap_ratio_beta01_tau05 = 0.00423488164680485683686;
inline constexpr double energy_delta_1 = 177.652879219608455139;
inline constexpr double energy_delta_05 = 229.1941466475195501485;
inline constexpr double energy_delta_02 = 502.2532017443251386029;
inline constexpr double energy_delta_001 = 9869.817350793179790076;
inline constexpr double center_of_mass4_delta05 = -9.504063497345308299618;
inline constexpr double acosh_2 = 1.316957896924816708625;
inline constexpr double wallis_sin4 = 1.178097245096172464423;
inline constexpr double wallis_sin2cos2 = 0.3926990816987241548078;

}  // namespace refs
