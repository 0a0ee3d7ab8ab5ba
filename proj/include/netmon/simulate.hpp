#pragma once

#include <cstdint>
#include <string>

#include "netmon/date.hpp"
#include "netmon/ingest.hpp"

namespace netmon {

/// One-factor geometric random walk:
///   r_it = loading * f_t + e_it,  f_t ~ N(0, factor_sd^2),  e_it ~ N(0, idio_sd^2)
/// so every pair of returns has correlation
///   loading^2 factor_sd^2 / (loading^2 factor_sd^2 + idio_sd^2).
struct SimulationSpec {
    std::uint64_t seed = 42;
    int assets = 28;
    int days = 252;  // price rows
    double loading = 0.5;
    double factor_sd = 0.01;
    double idio_sd = 0.01;
    std::string index_ticker;  // adds an equal-weighted index column when non-empty
    Date start{std::chrono::year{2021}, std::chrono::January, std::chrono::day{4}};
};

double implied_correlation(const SimulationSpec& spec);

// Prices start at 100 and are dated on consecutive weekdays.
PricePanel simulate_prices(const SimulationSpec& spec);

// Ingest-format CSV, 15 significant digits.
std::string to_csv(const PricePanel& panel);

}  // namespace netmon
