#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "mfg/equilibrium.hpp"

namespace mfg::app {

/// 12 significant digits, fixed notation (no exponent), trailing zeros kept.
std::string format_decimal(double value);

inline constexpr const char* kPriceHeader = "t,p";
inline constexpr const char* kTrajectoriesHeader = "agent,t,a,k,q_a,q_k,c,i";
inline constexpr const char* kAveragesHeader = "t,a_bar,k_bar,c_bar,i_bar";

void write_price_csv(const std::filesystem::path& file, const PriceCurve& price);
void write_trajectories_csv(const std::filesystem::path& file,
                            std::span<const Trajectory> trajectories);
void write_averages_csv(const std::filesystem::path& file, const AveragesSeries& averages);
void write_json(const std::filesystem::path& file, const nlohmann::json& doc);

/// Dense data series behind the price, trajectory, average-goods and
/// average-capital plots.
void write_plot_data(const std::filesystem::path& dir, const PriceCurve& price,
                     std::span<const Trajectory> trajectories, const AveragesSeries& averages,
                     double kbar_rate);

}  // namespace mfg::app
