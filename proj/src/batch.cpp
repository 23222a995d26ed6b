#include "begwg/batch.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace begwg {

namespace {

// Runs fn(block, lo, hi) over all kBlock-sized blocks of [0, n) in parallel.
// The first exception wins and is rethrown after the region joins threads.
template <typename Fn>
void for_each_block(std::size_t n, Fn&& fn) {
    const std::int64_t nblocks =
        static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
        try {
            const std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
            const std::size_t hi = std::min(n, lo + kBlock);
            fn(static_cast<std::uint64_t>(blk), lo, hi);
        } catch (...) {
#pragma omp critical
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
}

template <typename Fn>
void for_each_block_serial(std::size_t n, Fn&& fn) {
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
        const std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        fn(blk, lo, hi);
    }
}

}  // namespace

PairedSample sample_pairs(const BegwgParams& p, std::uint64_t seed,
                          std::size_t n, const QuadratureConfig& cfg) {
    PairedSample out;
    out.x1.assign(n, 0.0);
    out.x2.assign(n, 0.0);
    for_each_block(n, [&](std::uint64_t blk, std::size_t lo, std::size_t hi) {
        UniformStream u(block_seed(seed, blk));
        for (std::size_t i = lo; i < hi; ++i) {
            const auto pr = sample_pair(p, u, cfg);
            out.x1[i] = pr.first;
            out.x2[i] = pr.second;
        }
    });
    return out;
}

PairedSample sample_pairs_serial(const BegwgParams& p, std::uint64_t seed,
                                 std::size_t n, const QuadratureConfig& cfg) {
    PairedSample out;
    out.x1.assign(n, 0.0);
    out.x2.assign(n, 0.0);
    for_each_block_serial(
        n, [&](std::uint64_t blk, std::size_t lo, std::size_t hi) {
            UniformStream u(block_seed(seed, blk));
            for (std::size_t i = lo; i < hi; ++i) {
                const auto pr = sample_pair(p, u, cfg);
                out.x1[i] = pr.first;
                out.x2[i] = pr.second;
            }
        });
    return out;
}

std::vector<double> sample_univariate(const EgwgParams& p, std::uint64_t seed,
                                      std::size_t n,
                                      const QuadratureConfig& cfg) {
    std::vector<double> out(n);
    for_each_block(n, [&](std::uint64_t blk, std::size_t lo, std::size_t hi) {
        UniformStream u(block_seed(seed, blk));
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = quantile(p, u.next(), cfg);
    });
    return out;
}

std::vector<double> sample_univariate_serial(const EgwgParams& p,
                                             std::uint64_t seed, std::size_t n,
                                             const QuadratureConfig& cfg) {
    std::vector<double> out(n);
    for_each_block_serial(
        n, [&](std::uint64_t blk, std::size_t lo, std::size_t hi) {
            UniformStream u(block_seed(seed, blk));
            for (std::size_t i = lo; i < hi; ++i)
                out[i] = quantile(p, u.next(), cfg);
        });
    return out;
}

std::vector<double> map_indexed(std::size_t n,
                                const std::function<double(std::size_t)>& f) {
    std::vector<double> out(n);
    for_each_block(n, [&](std::uint64_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
    });
    return out;
}

std::vector<double> map_indexed_serial(
    std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

int active_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace begwg
