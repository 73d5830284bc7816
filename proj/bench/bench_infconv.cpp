// Timing comparison of the convolution engines: serial reference vs the
// OpenMP kernel on the same brute-force algorithm, and the O(n) convex merge
// path against the brute force it replaces.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "infconv/catalog.hpp"
#include "infconv/convolution.hpp"
#include "infconv/grid.hpp"

using namespace infconv;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        body();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

ConvexSequence random_convex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> incr(-5.0, 5.0);
    std::vector<double> deltas(n - 1);
    for (auto& d : deltas) d = incr(rng);
    std::sort(deltas.begin(), deltas.end());
    std::vector<double> values(n);
    values[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) values[i] = values[i - 1] + deltas[i - 1];
    return ConvexSequence(std::move(values));
}

void pair_engines(int dim, int n) {
    const GridSpec g = make_grid(dim, 6.0, n);
    const auto f = sample(FunctionSpec(Gaussian{}), g);
    const auto q = sample(FunctionSpec(Quadratic{1.0}), g);
    const double serial = time_best_of(3, [&] { (void)reference::convolve_pair(f, q); });
    const double parallel = time_best_of(3, [&] { (void)convolve_pair(f, q); });
    std::printf("pair d=%d n=%-5d  serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n",
                dim, n, serial * 1e3, parallel * 1e3, serial / parallel);
}

void convex_paths(std::size_t n) {
    std::mt19937_64 rng(7373);
    const auto a = random_convex(rng, n);
    const auto b = random_convex(rng, n);
    const double merge = time_best_of(10, [&] { (void)convolve_convex_1d(a, b); });

    const GridSpec g = make_grid(1, 6.0, static_cast<int>(n));
    const GridFunction fa(g, {a.values().begin(), a.values().end()});
    const GridFunction fb(g, {b.values().begin(), b.values().end()});
    const double brute = time_best_of(3, [&] { (void)reference::convolve_pair(fa, fb); });
    std::printf("convex n=%-6zu  brute %10.2f ms   merge %10.4f ms   speedup %.0fx\n", n,
                brute * 1e3, merge * 1e3, brute / merge);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    pair_engines(1, 4097);
    pair_engines(2, 129);
    convex_paths(4097);
    convex_paths(16385);
    return 0;
}
