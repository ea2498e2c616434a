#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistar {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}
inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}
// Floor division and the matching remainder (sign of divisor irrelevant,
// remainder in [0, |b|)).
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}
inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// ---------------------------------------------------------------------------
// Errors. The CLI maps these to its stable exit codes.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct mixed_domain : error { using error::error; };
struct bad_arity : error { using error::error; };
struct bad_discriminant : error { using error::error; };
struct bad_shape : error { using error::error; };
struct unsupported_closure : error { using error::error; };
struct unrepresentable_overring : error { using error::error; };
struct field_domain : error { using error::error; };
struct colon_zero : error { using error::error; };
struct precision_exhausted : error { using error::error; };
struct zero_poly : error { using error::error; };
struct not_in_d : error { using error::error; };
struct not_star_dedekind : error { using error::error; };
struct witness_search_exhausted : error { using error::error; };
struct verification_failed : error { using error::error; };
struct internal_disagreement : error { using error::error; };
struct parse_error : error { using error::error; };
struct semantic_error : error { using error::error; };

// ---------------------------------------------------------------------------
// Deterministic RNG. Every sampled falsifier records the seed it ran with.

class rng {
  public:
    explicit rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // uniform in [lo, hi] inclusive
    long range(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng_);
    }
    bool coin() { return range(0, 1) == 1; }

  private:
    std::mt19937_64 eng_;
    std::uint64_t seed_;
};

constexpr std::uint64_t kDefaultSeed = 0x5eed'1dea1ULL;

// Three-valued verdict for classification flags: sampled falsifiers never
// report a bare "holds" as a proof, structural facts give true/false.
enum class tv { yes, no, unknown };

inline const char* tv_name(tv v) {
    switch (v) {
        case tv::yes: return "true";
        case tv::no: return "false";
        default: return "unknown";
    }
}

}  // namespace semistar
