#pragma once

#include <cstddef>
#include <vector>

// Finite-n tolerances for the Monte Carlo checks, and the default workloads of
// each experiment suite. These are calibration choices, kept apart from the
// reference formulas they are compared against. Bump the version whenever a
// value changes; it is echoed into every output file.

namespace rainbow::envelopes {

inline constexpr int kVersion = 1;

// Min-split scaling: mean ratio between consecutive m (m quadrupling).
inline constexpr double kMinSplitRatioLow = 1.6;
inline constexpr double kMinSplitRatioHigh = 2.4;
// Estimator vs exact enumeration, in standard errors.
inline constexpr double kExactSigmas = 3.0;
inline constexpr double kSmallCaseSigmas = 4.0;

// Bridge number one-sided slack on m / (t + 1).
inline constexpr double kBridgeSlack = 1.05;

// Borel law: absolute tolerance per probability.
inline constexpr double kBorelTolerance = 0.01;
inline constexpr std::size_t kBorelMaxK = 5;

// Phase transition.
inline constexpr double kSubcriticalRatioLow = 0.5;
inline constexpr double kSubcriticalRatioHigh = 1.5;
inline constexpr double kSupercriticalFraction = 0.7;
inline constexpr double kRunsInEnvelope = 0.8;
inline constexpr double kLargestComponentTolerance = 0.15;

// Giant component.
inline constexpr double kGiantTolerance = 0.02;
inline constexpr double kSubcriticalGiantFraction = 0.01;
inline constexpr double kDenseGiantFraction = 0.99;

// Long paths and cycles: success rates.
inline constexpr double kPathSuccess = 0.9;
inline constexpr double kCycleSuccess = 0.8;

// Default workloads.
inline const std::vector<std::size_t> kMinSplitGrid{4, 100, 400, 1600};
inline constexpr std::size_t kMinSplitReps = 10000;
inline constexpr std::size_t kBridgeM = 1000;
inline constexpr std::size_t kBridgeT = 50;
inline constexpr std::size_t kBridgeReps = 10000;
inline constexpr std::size_t kSmallCaseReps = 1000000;
inline constexpr std::size_t kDoubleBridgeRatio = 100;
inline const std::vector<std::size_t> kDoubleBridgeRoots{10, 100, 1000};
inline constexpr std::size_t kDoubleBridgeReps = 10000;
inline constexpr std::size_t kBorelM = 100000;
inline constexpr std::size_t kBorelT = 1000;
inline constexpr std::size_t kBorelReps = 100000;
inline constexpr std::size_t kPhaseN = 1000000;
inline const std::vector<double> kPhaseEpsilons{-0.05, 0.05};
inline constexpr std::size_t kPhaseReps = 10;
inline constexpr std::size_t kGiantN = 100000;
inline const std::vector<double> kGiantDegrees{0.5, 2.0, 20.0};
inline constexpr std::size_t kGiantReps = 50;
inline constexpr std::size_t kCycleN = 100000;
inline constexpr double kCycleD = 129.0;
inline constexpr double kCycleDelta = 0.5;
inline constexpr std::size_t kCycleReps = 10;

}  // namespace rainbow::envelopes
