// Throughput benchmark for the simulate->analyze hot loop (Gaussian step,
// Euler update, crossing-engine push). Used to budget the long-horizon
// Monte Carlo configurations.
//
// Usage: bench_stream [n_steps] [dt] [c]

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "tvar/simulate.hpp"
#include "tvar/truncvar.hpp"

int main(int argc, char** argv) {
  const std::uint64_t n_steps =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200'000'000ULL;
  const double dt = argc > 2 ? std::strtod(argv[2], nullptr) : 1e-6;
  const double c = argc > 3 ? std::strtod(argv[3], nullptr) : 1.0;

  const tvar::DiffusionSpec spec = tvar::DiffusionSpec::bm_drift(1.0);
  const tvar::GridSpec grid{static_cast<double>(n_steps) * dt, dt};

  tvar::EulerStream es(spec, grid, /*seed=*/1, /*stream=*/0);
  tvar::TruncVarAccumulator acc(c);
  acc.push(es.t(), es.x());

  const auto t0 = std::chrono::steady_clock::now();
  while (!es.done()) {
    es.step();
    acc.push(es.t(), es.x());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::cout << "steps: " << n_steps << "\n"
            << "seconds: " << secs << "\n"
            << "steps/sec: " << static_cast<double>(n_steps) / secs << "\n"
            << "tv (consistency): " << acc.tv() << "\n";
  return 0;
}
