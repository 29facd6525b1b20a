#include "mfg/app/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mfg::app {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
    return out;
}

}  // namespace

std::string format_decimal(double value) {
    if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    if (value == 0.0) return "0";
    constexpr int kDigits = 12;
    // Round to 12 significant digits first so the exponent reflects the rounded value.
    char sci[40];
    std::snprintf(sci, sizeof sci, "%.*e", kDigits - 1, value);
    const int exponent = std::atoi(std::strchr(sci, 'e') + 1);
    const int decimals = std::max(0, kDigits - 1 - exponent);
    char buf[400];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, std::strtod(sci, nullptr));
    return buf;
}

void write_price_csv(const std::filesystem::path& file, const PriceCurve& price) {
    auto out = open_out(file);
    out << kPriceHeader << '\n';
    for (int i = 0; i <= price.intervals(); ++i) {
        out << format_decimal(price.node_time(i)) << ','
            << format_decimal(price.samples()[static_cast<std::size_t>(i)]) << '\n';
    }
}

void write_trajectories_csv(const std::filesystem::path& file,
                            std::span<const Trajectory> trajectories) {
    auto out = open_out(file);
    out << kTrajectoriesHeader << '\n';
    for (std::size_t n = 0; n < trajectories.size(); ++n) {
        const Trajectory& tr = trajectories[n];
        for (int j = 0; j < tr.grid.nodes(); ++j) {
            const AgentState& s = tr.states[static_cast<std::size_t>(j)];
            const ControlPair& u = tr.controls[static_cast<std::size_t>(j)];
            out << n << ',' << format_decimal(tr.grid.time(j)) << ',' << format_decimal(s.a) << ','
                << format_decimal(s.k) << ',' << format_decimal(s.q_a) << ','
                << format_decimal(s.q_k) << ',' << format_decimal(u.consumption) << ','
                << format_decimal(u.investment) << '\n';
        }
    }
}

void write_averages_csv(const std::filesystem::path& file, const AveragesSeries& av) {
    auto out = open_out(file);
    out << kAveragesHeader << '\n';
    for (int j = 0; j < av.grid.nodes(); ++j) {
        const auto i = static_cast<std::size_t>(j);
        out << format_decimal(av.grid.time(j)) << ',' << format_decimal(av.a_bar[i]) << ','
            << format_decimal(av.k_bar[i]) << ',' << format_decimal(av.c_bar[i]) << ','
            << format_decimal(av.i_bar[i]) << '\n';
    }
}

void write_json(const std::filesystem::path& file, const nlohmann::json& doc) {
    auto out = open_out(file);
    out << doc.dump(2) << '\n';
}

void write_plot_data(const std::filesystem::path& dir, const PriceCurve& price,
                     std::span<const Trajectory> trajectories, const AveragesSeries& av,
                     double kbar_rate) {
    {
        auto out = open_out(dir / "plot_price.csv");
        out << "t,p,is_node\n";
        const int dense = 20 * price.intervals();
        for (int j = 0; j <= dense; ++j) {
            const double t = price.horizon() * j / dense;
            out << format_decimal(t) << ',' << format_decimal(price(t)) << ','
                << (j % 20 == 0 ? 1 : 0) << '\n';
        }
    }
    {
        auto out = open_out(dir / "plot_trajectories.csv");
        out << "agent,t,a,k,is_initial\n";
        for (std::size_t n = 0; n < trajectories.size(); ++n) {
            const Trajectory& tr = trajectories[n];
            for (int j = 0; j < tr.grid.nodes(); ++j) {
                const AgentState& s = tr.states[static_cast<std::size_t>(j)];
                out << n << ',' << format_decimal(tr.grid.time(j)) << ',' << format_decimal(s.a)
                    << ',' << format_decimal(s.k) << ',' << (j == 0 ? 1 : 0) << '\n';
            }
        }
    }
    {
        auto out = open_out(dir / "plot_abar.csv");
        out << "t,a_bar\n";
        for (int j = 0; j < av.grid.nodes(); ++j) {
            out << format_decimal(av.grid.time(j)) << ','
                << format_decimal(av.a_bar[static_cast<std::size_t>(j)]) << '\n';
        }
    }
    {
        auto out = open_out(dir / "plot_kbar.csv");
        out << "t,k_bar,k_bar_exact\n";
        const double k0 = av.k_bar.front();
        for (int j = 0; j < av.grid.nodes(); ++j) {
            const double t = av.grid.time(j);
            out << format_decimal(t) << ',' << format_decimal(av.k_bar[static_cast<std::size_t>(j)])
                << ',' << format_decimal(k0 * std::exp(kbar_rate * t)) << '\n';
        }
    }
}

}  // namespace mfg::app
