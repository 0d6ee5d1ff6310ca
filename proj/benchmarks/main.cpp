// The packaged libbenchmark_main.a carries LTO bytecode tied to one compiler
// build, so the entry point lives here.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
