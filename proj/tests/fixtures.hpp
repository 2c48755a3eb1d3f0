#pragma once

#include "trident/model.hpp"

// The two large-model regression fixtures used across the test suites.
namespace fixtures {

inline trident::ModelShape model_245b() { return {76, 16384, 2048, 56000, true}; }
inline trident::ClusterShape cluster_245b() { return {2128, 8, {}, {}, {}}; }
inline trident::ParallelConfig config_245b() { return {8, 38, 7, 1, 3360}; }

inline trident::ModelShape model_13b() { return {40, 5120, 2048, 56000, true}; }
inline trident::ClusterShape cluster_13b() { return {1792, 8, {}, {}, {}}; }
inline trident::ParallelConfig config_13b() { return {8, 2, 112, 4, 2688}; }

// Published parameter totals the shapes must reproduce.
inline constexpr double kParams245b = 245.73e9;
inline constexpr double kParams13b = 12.87e9;

}  // namespace fixtures
