// Green-sum throughput per ISA: sublin_bench [sources] [targets]
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sublin/simd.hpp"

using namespace sublin;

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 20000;
  const std::size_t m = argc > 2 ? std::stoul(argv[2]) : 2000;

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(-0.57, 0.57);
  PointSet sources(3);
  PointSet targets(3);
  for (std::size_t i = 0; i < n; ++i) {
    const double p[3] = {coord(rng), coord(rng), coord(rng)};
    sources.push_back(p);
    if (i < m) targets.push_back(p);
  }
  const simd::SourceSet src(DomainKind::UnitBall, sources, std::vector<double>(n, 1.0));

  for (auto isa : {simd::Isa::Scalar, simd::Isa::Avx2, simd::Isa::Avx512}) {
    if (!simd::isa_supported(isa)) continue;
    std::vector<simd::KernelSum> out(targets.size());
    const auto t0 = std::chrono::steady_clock::now();
    simd::green_sums(src, targets, out, isa);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double total = 0.0;
    for (const auto& o : out) total += o.sum;
    std::printf("%-7s %.3f ns/pair  sum=%.17g\n", std::string(simd::to_string(isa)).c_str(),
                dt / static_cast<double>(targets.size() * n) * 1e9, total);
  }
}
