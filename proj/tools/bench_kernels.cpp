// Timing comparison of the fast sine-transform kernels (serial and
// OpenMP-threaded) against the dense serial reference implementation.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

#include "sdwave/reference.hpp"
#include "sdwave/transform.hpp"

using namespace sdwave;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void bench_case(int d, int n, int reps) {
    BasisSpec basis(d, n);
    SpectralField f(basis);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& c : f.coeffs) c = gauss(rng);

    volatile double sink = 0.0;
    auto fast = [&] {
        GridField g = to_grid(f);
        sink = sink + g.values[0];
    };
    auto dense = [&] {
        GridField g = reference::to_grid(f);
        sink = sink + g.values[0];
    };

    to_grid(f);  // warm the plan cache
    par::set_threads(1);
    double t_serial = seconds(fast, reps);
    int hw = std::max(1u, std::thread::hardware_concurrency());
    par::set_threads(hw);
    double t_par = seconds(fast, reps);
    par::set_threads(1);
    double t_dense = seconds(dense, std::max(1, reps / 4));

    // parity check: all three paths agree bitwise or nearly so
    par::set_threads(hw);
    GridField gp = to_grid(f);
    par::set_threads(1);
    GridField gs = to_grid(f);
    GridField gd = reference::to_grid(f);
    double dev_par = 0.0, dev_dense = 0.0;
    for (std::size_t i = 0; i < gs.values.size(); ++i) {
        dev_par = std::max(dev_par, std::abs(gp.values[i] - gs.values[i]));
        dev_dense = std::max(dev_dense, std::abs(gd.values[i] - gs.values[i]));
    }

    std::printf(
        "d=%d N=%-3d  dense %.3e s   fast(1) %.3e s (%5.1fx)   fast(%d) %.3e s "
        "(%5.1fx)   |par-serial| %.1e  |dense-fast| %.1e\n",
        d, n, t_dense, t_serial, t_dense / t_serial, hw, t_par, t_dense / t_par,
        dev_par, dev_dense);
}

}  // namespace

int main() {
    std::printf("synthesis kernel: dense reference vs fast sine transform\n");
    bench_case(1, 64, 200);
    bench_case(1, 256, 100);
    bench_case(2, 64, 20);
    bench_case(3, 16, 20);
    bench_case(3, 32, 5);
    return 0;
}
