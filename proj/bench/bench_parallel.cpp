// Compares the OpenMP node kernels against the serial reference on the
// heavier problem families and checks that both paths produce the same
// iterates.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "dadmm/harness.hpp"

using namespace dadmm;

namespace {

double time_run(const std::vector<NodeProblem>& problems, const Graph& g,
                const Coloring& col, double rho, const StopRule& stop, Exec exec,
                RunTrace& trace) {
  auto start = std::chrono::steady_clock::now();
  RunOptions opts;
  opts.exec = exec;
  trace = d_admm(problems, g, col, rho, stop, opts);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_case(const char* name, const ProblemInstance& instance, const Graph& g,
                double rho, int steps) {
  Coloring col = greedy_color(g);
  StopRule stop{reference_solution(instance), 1e-300, steps};

  RunTrace serial_trace, parallel_trace;
  auto serial_problems = make_node_problems(instance);
  double serial = time_run(serial_problems, g, col, rho, stop, Exec::serial, serial_trace);
  auto parallel_problems = make_node_problems(instance);
  double parallel =
      time_run(parallel_problems, g, col, rho, stop, Exec::openmp, parallel_trace);

  bool identical = serial_trace.final_stacked == parallel_trace.final_stacked;
  std::printf("%-28s %4d steps   serial %7.3fs   openmp %7.3fs   speedup %.2fx   %s\n",
              name, steps, serial, parallel, serial / parallel,
              identical ? "identical" : "DIVERGED");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    CsInstance cs = gen_gaussian_cs(60, 256, 5, 0.01, 2);
    ProblemInstance instance = make_bpdn_instance(cs.a, cs.b, 1.0, 50);
    bench_case("bpdn 60x256, lattice 50", instance, gen_lattice(50), 0.1, 150);
  }
  {
    CsInstance cs = gen_partial_dct_cs(50, 250, 5, 0.01, 2);
    ProblemInstance instance = make_lasso_instance(cs.a, cs.b, 0.1, 1e-3, 10);
    bench_case("lasso 50x250, lattice 10", instance, gen_lattice(10), 0.01, 150);
  }
  {
    ProblemInstance instance = gen_separable_svm(100, 4, 1.0, 5, 50);
    bench_case("svm 100x4, lattice 50", instance, gen_lattice(50), 10.0, 400);
  }
  {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> dist(10.0, 100.0);
    Eigen::VectorXd theta(200);
    for (int p = 0; p < 200; ++p) theta[p] = dist(rng);
    ProblemInstance instance = make_consensus_instance(theta);
    bench_case("consensus, lattice 200", instance, gen_lattice(200), 1.0, 2000);
  }
  return 0;
}
