// Serial references against their OpenMP counterparts, plus the grid index
// against a linear scan.

#include <benchmark/benchmark.h>

#include "symflat/beta.hpp"
#include "symflat/cubes.hpp"
#include "symflat/flatness.hpp"
#include "symflat/generators.hpp"
#include "symflat/measure.hpp"
#include "symflat/parallel.hpp"
#include "symflat/symmetry.hpp"

using namespace symflat;

namespace {

const DiscreteMeasure& lines() {
    static const DiscreteMeasure mu = [] {
        GeneratorSpec s;
        s.kind = GeneratorKind::equidistant_lines;
        s.h = 1e-3;
        s.m = 5;
        s.gap = 1.0;
        s.extent = 20.0;
        return generate(s);
    }();
    return mu;
}

const DiscreteMeasure& cross() {
    static const DiscreteMeasure mu = [] {
        GeneratorSpec s;
        s.kind = GeneratorKind::cross;
        s.h = 1e-3;
        s.extent = 4.0;
        return generate(s);
    }();
    return mu;
}

const OmegaMap kOmega({{1, 0.008, 0.0}, {2, 0.0, 0.004}, {3, -0.002, 0.0}});

struct DefectInput {
    std::vector<Point2> centers = sample_centers(lines(), 64, 4.0, 1);
    std::vector<double> scales = geometric_scales(0.1, 1.0, 8);
};

const DefectInput& defect_input() {
    static const DefectInput in;
    return in;
}

void BM_defect_serial(benchmark::State& st) {
    DefectOptions opt;
    opt.functional = Functional::riesz;
    for (auto _ : st)
        benchmark::DoNotOptimize(
            defect_report_serial(lines(), kOmega, defect_input().centers, defect_input().scales, opt).sup_norm);
}

void BM_defect_parallel(benchmark::State& st) {
    DefectOptions opt;
    opt.functional = Functional::riesz;
    for (auto _ : st)
        benchmark::DoNotOptimize(
            defect_report(lines(), kOmega, defect_input().centers, defect_input().scales, opt).sup_norm);
}

const CubeLattice& cross_lattice() {
    static const CubeLattice L = build_lattice(cross(), 0, 6);
    return L;
}

void BM_beta_cubes_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(beta_cubes_serial(cross(), cross_lattice()).size());
}

void BM_beta_cubes_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(beta_cubes(cross(), cross_lattice()).size());
}

std::size_t top_cube() { return cross_lattice().level(0).front(); }

void BM_certify_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(certify_serial(cross(), kOmega, cross_lattice(), top_cube()).max_ratio);
}

void BM_certify_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(certify(cross(), kOmega, cross_lattice(), top_cube()).max_ratio);
}

void BM_ball_mass_bruteforce(benchmark::State& st) {
    const double r = static_cast<double>(st.range(0)) / 100.0;
    for (auto _ : st) benchmark::DoNotOptimize(ball_mass_bruteforce(lines(), {0.3, 0.0}, r));
}

void BM_ball_mass_index(benchmark::State& st) {
    const double r = static_cast<double>(st.range(0)) / 100.0;
    for (auto _ : st) benchmark::DoNotOptimize(ball_mass(lines(), {0.3, 0.0}, r));
}

}  // namespace

BENCHMARK(BM_defect_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_defect_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_beta_cubes_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_beta_cubes_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_certify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_certify_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ball_mass_bruteforce)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ball_mass_index)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::AddCustomContext("omp_threads", std::to_string(max_threads()));
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
}
