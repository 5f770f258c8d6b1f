#include <benchmark/benchmark.h>

#include <memory>

#include "treeitp/validator.hpp"

#include "support/data.hpp"
#include "support/random_proof.hpp"
#include "support/session.hpp"

using namespace treeitp;
using namespace treeitp::testing;

namespace {

std::vector<std::string> inputs(int which) {
    switch (which) {
    case 0:
        return {read_data("example1.smt"), read_data("example1.proof")};
    case 1:
        return {read_data("congruence_mono.smt"), read_data("congruence.proof")};
    default: {
        RandomProof rp = random_proof(static_cast<std::uint64_t>(which));
        return {rp.problem, rp.proof};
    }
    }
}

struct Pipeline {
    explicit Pipeline(const std::vector<std::string>& texts)
        : session(texts),
          colouring(assign_colours(session.doc.proof, session.problem(), ColouringOptions{})),
          interpolator(session.problem(), session.doc.proof, colouring),
          validator(session.problem(), session.doc.proof, interpolator, OracleBudget{}) {
        interpolator.run();
    }

    Session session;
    Colouring colouring;
    Interpolator interpolator;
    Validator validator;
};

// Validation adds fresh names to the context, so every iteration gets a new pipeline,
// built outside the timed region.
template <bool Parallel>
void check(benchmark::State& state) {
    const std::vector<std::string> texts = inputs(static_cast<int>(state.range(0)));
    std::size_t obligations = 0;
    for (auto _ : state) {
        state.PauseTiming();
        auto p = std::make_unique<Pipeline>(texts);
        state.ResumeTiming();
        ValidationReport r = Parallel ? p->validator.check_all(ValidationLevel::Full)
                                      : p->validator.check_all_serial(ValidationLevel::Full);
        obligations = r.results.size();
        benchmark::DoNotOptimize(r);
        state.PauseTiming();
        p.reset();
        state.ResumeTiming();
    }
    state.counters["obligations"] = static_cast<double>(obligations);
}

// 0: example 1, 1: congruence problem, 2 and up: random proof with that seed.
void cases(benchmark::internal::Benchmark* b) {
    for (int which : {0, 1, 17, 42})
        b->Arg(which);
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(check<true>)->Name("check_all")->Apply(cases);
BENCHMARK(check<false>)->Name("check_all_serial")->Apply(cases);

BENCHMARK_MAIN();
