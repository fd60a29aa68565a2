// Serial reference vs OpenMP kernels: median wall time and bitwise agreement.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "ymt/fields.hpp"
#include "ymt/kernels.hpp"
#include "ymt/theory.hpp"

using namespace ymt;

namespace {

double median_ms(int reps, const std::function<void()>& f) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    const auto a = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - a).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

template <class F>
void row(const char* name, int reps, F run) {
  decltype(run(Exec::serial)) s, p;
  const double ts = median_ms(reps, [&] { s = run(Exec::serial); });
  const double tp = median_ms(reps, [&] { p = run(Exec::parallel); });
  std::printf("%-20s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, ts / tp, s == p ? "identical" : "DIFFER");
}

bool operator==(const AlgebraCochain2& a, const AlgebraCochain2& b) { return a.values == b.values; }
bool operator==(const LinkField& a, const LinkField& b) { return a.links == b.links; }

}  // namespace

int main(int argc, char** argv) {
  std::string extents = "6,6,6,6", algebra = "su2";
  int reps = 5, threads = 0;
  std::uint64_t seed = 1;
  CLI::App app{"kernel benchmark", "ymt_bench"};
  app.add_option("--lattice", extents);
  app.add_option("--algebra", algebra);
  app.add_option("--reps", reps)->check(CLI::PositiveNumber);
  app.add_option("--threads", threads);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  std::vector<int> ext;
  for (const auto& t : CLI::detail::split(extents, ',')) ext.push_back(std::stoi(t));
  if (threads > 0) kernels::omp::set_max_threads(threads);

  const auto lat = std::make_shared<const Lattice>(ext);
  const auto alg = catalog::by_name(algebra);
  Rng rng(seed);
  const auto u = random_links(lat, alg, rng, 0.4);
  const auto d = log_links(u);
  const auto g = random_gauge(lat, alg, rng);
  const auto t = YMTTheory::make(PairingSpec::killing(lat, alg), "killing");
  const auto f = curvature(d);

  std::printf("lattice %s, %zu edges, %s, %d threads, median of %d\n", extents.c_str(), lat->num_edges(),
              algebra.c_str(), kernels::omp::max_threads(), reps);
  std::printf("%-20s %10s %10s %9s  %s\n", "kernel", "serial_ms", "omp_ms", "speedup", "results");
  row("coboundary", reps, [&](Exec e) { return coboundary(d, e); });
  row("cup_bracket", reps, [&](Exec e) { return cup_bracket(d, e); });
  row("plaquette_log", reps, [&](Exec e) { return plaquette_curvature(u, e); });
  row("gauge_links", reps, [&](Exec e) { return gauge_transform_links(u, g, e); });
  row("pairing_density", reps, [&](Exec e) { return pairing_density(t, f, f, e); });
  if (lat->dim() == 4) row("topological", reps, [&](Exec e) { return topological_integral(f, e); });
  return 0;
}
