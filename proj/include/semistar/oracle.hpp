#pragma once

#include <semistar/arith.hpp>
#include <semistar/nagata.hpp>

namespace semistar {

// Independent reference implementations. These share only the element/ideal
// types (construction, membership, canonical equality) with the fast paths:
// the closure formulas themselves are recomputed from the definitions by
// element-level enumeration, p-adic valuations and series probing.

// (E^-1)^-1 by element-level dualization
ideal brute_v(const ideal& e);
// intersection of E D_P over an explicit finite prime list
ideal brute_spectral(const ideal& e, const std::vector<prime_id>& delta);
// lower-bound oracle for star_f: union of F^star over fg subideals generated
// by probed elements (at most `bound` of them); the result is contained in
// the fast path's answer and equals it on the supported backends
ideal brute_ft(const star& s, const ideal& e, int bound);

// independent valuation of an element at a DVR prime of a quadratic order
// (split primes via Hensel-lifted p-adic evaluation, inert/ramified via norms)
long padic_val(const quad_order& o, const qelem& z, const quad_prime& P);

struct theorem_result {
    std::string id;
    int instances = 0;
    int agree = 0;
    std::string first_disagreement;

    bool ok() const { return instances == agree; }
};

struct suite_result {
    std::string domain_name, star_name;
    std::uint64_t seed = 0;
    std::vector<theorem_result> rows;

    bool ok() const {
        for (auto& r : rows)
            if (!r.ok()) return false;
        return true;
    }
};

// Evaluates both sides of the encoded biconditionals on the instance and on
// randomized ideals; any disagreement is a hard failure of the build.
suite_result run_theorem_suite(const domain& d, const star& s, const sample_plan& p);

// oracle/fast-path agreement battery (acceptance criterion 7)
struct oracle_result {
    int checked = 0;
    int mismatches = 0;
    std::string first_mismatch;
};
oracle_result oracle_equivalence(const domain& d, const sample_plan& p);

}  // namespace semistar
