// Benchmark for the pairwise quadrature Gram assembly: the same kernel is
// run on the serial reference path and on the OpenMP path, the wall times
// are compared, and the two result matrices are required to match bit for
// bit (each entry is written by exactly one iteration, so thread scheduling
// cannot change the arithmetic).
//
// Usage: bench_gram [--count M] [--order N] [--reps R]
//   --count  size of the seeded test family            (default 16)
//   --order  truncation order of the bundled system    (default 6)
//   --reps   repetitions per mode, best time is kept   (default 3)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kreinreg/funcrep.hpp"
#include "kreinreg/neutral.hpp"
#include "kreinreg/parallel.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/quadrature.hpp"
#include "kreinreg/scenario.hpp"

using namespace kreinreg;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double, std::milli>(clock::now() - start)
      .count();
}

Eigen::MatrixXd pair_gram(const std::vector<FunctionRep>& fs,
                          const QuadratureSpec& quad, par::Mode mode) {
  const int n = static_cast<int>(fs.size());
  std::vector<std::pair<int, int>> upper;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) upper.emplace_back(i, j);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  par::for_index(
      upper.size(),
      [&](std::size_t t) {
        auto [i, j] = upper[t];
        double v = l2_inner(fs[static_cast<std::size_t>(i)],
                            fs[static_cast<std::size_t>(j)], quad)
                       .value;
        g(i, j) = v;
        g(j, i) = v;
      },
      mode);
  return g;
}

struct Timing {
  double serial_ms = std::numeric_limits<double>::infinity();
  double openmp_ms = std::numeric_limits<double>::infinity();
  bool identical = false;
};

Timing run_case(const std::vector<FunctionRep>& fs, const QuadratureSpec& quad,
                int reps) {
  Timing t;
  Eigen::MatrixXd reference, parallel_result;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_ms();
    reference = pair_gram(fs, quad, par::Mode::serial);
    t.serial_ms = std::min(t.serial_ms, now_ms() - t0);
    t0 = now_ms();
    parallel_result = pair_gram(fs, quad, par::Mode::openmp);
    t.openmp_ms = std::min(t.openmp_ms, now_ms() - t0);
  }
  t.identical = reference.rows() == parallel_result.rows() &&
                (reference.array() == parallel_result.array()).all();
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  int count = 16;
  int order = 6;
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    auto next_int = [&](const char* what) {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value after %s\n", what);
        std::exit(2);
      }
      return std::atoi(argv[++i]);
    };
    if (a == "--count") {
      count = next_int("--count");
    } else if (a == "--order") {
      order = next_int("--order");
    } else if (a == "--reps") {
      reps = next_int("--reps");
    } else {
      std::fprintf(stderr,
                   "unknown option %s\n"
                   "usage: bench_gram [--count M] [--order N] [--reps R]\n",
                   a.c_str());
      return 2;
    }
  }
  if (count < 1 || order < 0 || reps < 1) {
    std::fprintf(stderr, "count and reps must be >= 1, order >= 0\n");
    return 2;
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  const QuadratureSpec quad;
  NeutralSystem sys = build_chi_system(default_profile("superexp", order), quad);
  std::vector<FunctionRep> family =
      tame_family(20020205, count, std::min(order, 8));

  std::printf("threads: %d, reps per mode: %d (best time kept)\n\n", threads,
              reps);
  std::printf("%-24s %8s %12s %12s %9s %6s\n", "workload", "pairs",
              "serial ms", "openmp ms", "speedup", "equal");

  int mismatches = 0;
  auto row = [&](const std::string& label, const std::vector<FunctionRep>& fs) {
    Timing t = run_case(fs, quad, reps);
    std::size_t pairs = fs.size() * (fs.size() + 1) / 2;
    std::printf("%-24s %8zu %12.2f %12.2f %8.2fx %6s\n", label.c_str(), pairs,
                t.serial_ms, t.openmp_ms, t.serial_ms / t.openmp_ms,
                t.identical ? "yes" : "NO");
    if (!t.identical) ++mismatches;
  };

  row("building blocks n=" + std::to_string(order), sys.delta_fns);
  row("assembled family n=" + std::to_string(order), sys.chi);
  row("seeded family m=" + std::to_string(count), family);

  if (mismatches > 0) {
    std::printf("\nFAIL: %d workload(s) differ between serial and openmp\n",
                mismatches);
    return 1;
  }
  std::printf("\nall workloads bit-identical across modes\n");
  return 0;
}
