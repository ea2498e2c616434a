#pragma once

#include <semistar/eval.hpp>

#include <functional>

namespace semistar {

struct sample_plan {
    int n_random = 200;
    std::uint64_t seed = kDefaultSeed;
};

// Deterministic canonical family: principal ideals of the small primes, their
// products, sums and colons, plus the backend's special ideals. Every sampled
// falsifier runs this family first, so the paper's counterexamples are found
// deterministically, never by luck.
std::vector<ideal> canonical_ideals(const domain& d);
std::vector<element> canonical_elements(const domain& d);  // nonzero
ideal random_ideal(const domain& d, rng& r);
element random_element(const domain& d, rng& r);  // nonzero
std::vector<ideal> sample_ideals(const domain& d, const sample_plan& p);

struct verdict {
    bool holds = true;
    std::string witness;  // first counterexample found
};

using closure_fn = std::function<ideal(const ideal&)>;

struct axiom_report {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<std::pair<std::string, std::string>> violations;

    bool ok() const { return violations.empty(); }
};

// Verifies the closure axioms (scaling, monotonicity, extensivity and
// idempotence) and the product / sum / colon / intersection formulas on the
// sample family. The closure_fn overload exists so corrupted closures can be
// exercised as negative controls.
axiom_report check_axioms(const domain& d, const closure_fn& f, const sample_plan& p);
axiom_report check_axioms(const domain& d, const star& s, const sample_plan& p);

// Falsifier for star1 <= star2 on the canonical family plus random samples.
verdict op_leq(const domain& d, const star& s1, const star& s2, const sample_plan& p);
// op_leq both ways (evaluator equality on samples; not a proof)
verdict op_equal_sampled(const domain& d, const star& s1, const star& s2,
                         const sample_plan& p);

}  // namespace semistar
