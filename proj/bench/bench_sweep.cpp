// Serial against parallel evaluation of a two-step (w, L) map.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "terabridge/explore.hpp"

using namespace terabridge;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 20;
  FigureSpec fig = figure_spec("fig2c");
  for (auto& a : fig.sweep.axes) a.count = n;

  auto time = [&](bool parallel) {
    auto t0 = std::chrono::steady_clock::now();
    auto pts = sweep_points(fig.sweep, fig.base, {parallel, 0});
    auto t1 = std::chrono::steady_clock::now();
    return std::make_pair(std::chrono::duration<double>(t1 - t0).count(), pts);
  };
  auto [ts, serial] = time(false);
  auto [tp, parallel] = time(true);

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i)
    same = serial[i].eta_total == parallel[i].eta_total && serial[i].n_total == parallel[i].n_total;

  std::cout << n << "x" << n << " two-step cells\n"
            << "serial    " << ts << " s\n"
            << "parallel  " << tp << " s\n"
            << "speedup   " << ts / tp << "\n"
            << "identical " << (same ? "yes" : "no") << "\n";
  return same ? 0 : 1;
}
