// Timing comparison of the serial reference kernels against the OpenMP ones.
// The outputs must agree exactly: every path owns its stream and reductions
// run in path order, so the parallel kernels are bit-identical to the serial
// reference.

#include <chrono>
#include <cstdio>
#include <cmath>

#include "pointproc/compensator.hpp"
#include "pointproc/gaussian.hpp"
#include "pointproc/markov.hpp"
#include "pointproc/parallel.hpp"
#include "pointproc/simulate.hpp"
#include "pointproc/stats.hpp"

using namespace pointproc;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-34s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", max_threads());

    {
        const IntensityModel model = HawkesConst{{0.3, 0.2, 0.1}, 0.2};
        const std::size_t n_paths = 20000;
        std::vector<EventSequence> serial_out, parallel_out;
        const double t_serial =
            time_ms([&] { serial_out = simulate_ensemble(model, 10.0, n_paths, 42, Exec::serial); });
        const double t_parallel = time_ms(
            [&] { parallel_out = simulate_ensemble(model, 10.0, n_paths, 42, Exec::parallel); });
        bool same = serial_out.size() == parallel_out.size();
        for (std::size_t i = 0; same && i < serial_out.size(); ++i) {
            const auto a = serial_out[i].times();
            const auto b = parallel_out[i].times();
            same = std::equal(a.begin(), a.end(), b.begin(), b.end());
        }
        report("self-exciting ensemble (20k paths)", t_serial, t_parallel, same);
    }

    {
        const VariancePath variance = VariancePath::linear(1.0, 1000, 1.0);
        const VelocityPath velocity = VelocityPath::constant(1.0, 1000, 0.5);
        const std::size_t n_paths = 20000;
        std::vector<double> serial_out, parallel_out;
        const auto kernel = [&](Exec exec) {
            return parallel_map<double>(n_paths, exec, [&](std::size_t i) {
                const GaussianPath w = simulate_wiener_additive(variance, RandomStream(7, i));
                return std::exp(girsanov_log_ratio(w, velocity));
            });
        };
        const double t_serial = time_ms([&] { serial_out = kernel(Exec::serial); });
        const double t_parallel = time_ms([&] { parallel_out = kernel(Exec::parallel); });
        report("Girsanov weights (20k x 1000 steps)", t_serial, t_parallel,
               serial_out == parallel_out);
    }

    {
        const MarkovModel chain(4,
                                {0.7, 0.1, 0.1, 0.1,  //
                                 0.1, 0.7, 0.1, 0.1,  //
                                 0.1, 0.1, 0.7, 0.1,  //
                                 0.1, 0.1, 0.1, 0.7},
                                {0.25, 0.25, 0.25, 0.25});
        const std::size_t n_paths = 5000;
        const auto kernel = [&](Exec exec) {
            return parallel_map<double>(n_paths, exec, [&](std::size_t i) {
                const StatePath path = simulate_markov(chain, 2000, RandomStream(11, i));
                double occupancy = 0.0;
                for (std::size_t x : path) {
                    occupancy += x == 0 ? 1.0 : 0.0;
                }
                return occupancy / static_cast<double>(path.size());
            });
        };
        std::vector<double> serial_out, parallel_out;
        const double t_serial = time_ms([&] { serial_out = kernel(Exec::serial); });
        const double t_parallel = time_ms([&] { parallel_out = kernel(Exec::parallel); });
        report("Markov occupancy (5k x 2000 steps)", t_serial, t_parallel,
               serial_out == parallel_out);
    }

    return 0;
}
