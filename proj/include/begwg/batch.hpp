#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "begwg/begwg.hpp"
#include "begwg/egwg.hpp"
#include "begwg/estimation.hpp"
#include "begwg/numerics.hpp"

namespace begwg {

// Block size for the counter-based seeding scheme. Each block of outputs gets
// its own stream seeded from (seed, block index), so results are independent
// of thread count and identical to the serial twins below.
inline constexpr std::size_t kBlock = 4096;

PairedSample sample_pairs(const BegwgParams& p, std::uint64_t seed,
                          std::size_t n, const QuadratureConfig& cfg = {});
PairedSample sample_pairs_serial(const BegwgParams& p, std::uint64_t seed,
                                 std::size_t n,
                                 const QuadratureConfig& cfg = {});

std::vector<double> sample_univariate(const EgwgParams& p, std::uint64_t seed,
                                      std::size_t n,
                                      const QuadratureConfig& cfg = {});
std::vector<double> sample_univariate_serial(const EgwgParams& p,
                                             std::uint64_t seed, std::size_t n,
                                             const QuadratureConfig& cfg = {});

// Parallel map over [0, n) with the same blocking discipline; f must be pure.
std::vector<double> map_indexed(std::size_t n,
                                const std::function<double(std::size_t)>& f);
std::vector<double> map_indexed_serial(
    std::size_t n, const std::function<double(std::size_t)>& f);

int active_threads();

}  // namespace begwg
