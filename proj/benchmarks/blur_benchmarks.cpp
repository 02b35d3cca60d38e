#include <benchmark/benchmark.h>

#include "skyblur/skyblur.hpp"

using namespace skyblur;

namespace {

GrayRaster bench_scene(int width, int height) {
    SceneParams params;
    params.width = width;
    params.height = height;
    params.marker = RoiRect{width / 2 - 8, height / 2, 16, height / 3};
    params.rng_seed = 42;
    return generate_scene(params);
}

void BM_Fft2d(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const int h = static_cast<int>(state.range(1));
    const GrayRaster img = bench_scene(w, h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft2d(img));
    }
    state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_Fft2d)
    ->Args({64, 64})
    ->Args({256, 256})
    ->Args({320, 240})   // mixed radix-2 / Bluestein
    ->Args({251, 131});  // prime dimensions, pure Bluestein

void BM_NaiveDft2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GrayRaster img = bench_scene(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(naive_dft2d(img));
    }
}
BENCHMARK(BM_NaiveDft2d)->Arg(16)->Arg(32);

void BM_LaplacianScore(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GrayRaster img = bench_scene(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplacian_score(img));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LaplacianScore)->Arg(64)->Arg(256)->Arg(512);

void BM_FftScore(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GrayRaster img = bench_scene(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft_score(img));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_FftScore)->Arg(64)->Arg(256);

void BM_GaussianBlur(benchmark::State& state) {
    const GrayRaster img = bench_scene(256, 256);
    const BlurSpec spec{static_cast<double>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_blur(img, spec));
    }
}
BENCHMARK(BM_GaussianBlur)->Arg(1)->Arg(3)->Arg(5);

void BM_GenerateScene(benchmark::State& state) {
    SceneParams params;
    params.rng_seed = 7;
    for (auto _ : state) {
        params.rng_seed += 1;  // defeat any would-be caching
        benchmark::DoNotOptimize(generate_scene(params));
    }
}
BENCHMARK(BM_GenerateScene);

void BM_ClassifyCropped(benchmark::State& state) {
    const GrayRaster img = bench_scene(256, 256);
    ClassifierConfig config = default_config(MetricKind::laplacian);
    config.roi = RoiRect{112, 122, 32, 100};
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(img, config));
    }
}
BENCHMARK(BM_ClassifyCropped);

}  // namespace

BENCHMARK_MAIN();
