#pragma once

#include <semistar/axioms.hpp>

namespace semistar {

struct flag {
    tv value = tv::unknown;
    std::string witness;
};

struct classification_report {
    std::string domain_name;
    std::string star_name;
    prime_family quasi_max;
    flag pstarmd, star_add, star_noetherian, star_dd, fc, qsic, krull;
    std::optional<int> dim;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
};

// quasi-star structure and invertibility
bool is_quasi_star_ideal(const ideal& I, const star& s);
bool is_star_invertible(const ideal& I, const star& s);
bool is_quasi_star_invertible(const ideal& E, const star& s);

// predicate layer; flags are three-valued: structural facts say yes/no,
// sampled falsifiers only ever say no/unknown
flag is_pstarmd(const domain& d, const star& s);
flag is_star_add(const domain& d, const star& s);
flag is_star_noetherian(const domain& d, const star& s);
flag is_star_dd(const domain& d, const star& s);

// finitely generated witness J <= I with J^star = I^star
ideal fg_witness(const ideal& I, const star& s);

struct fc_result {
    std::vector<prime_id> members;
    bool infinite = false;
};
fc_result fc_property(const element& x, const star& s);
flag fc_property_global(const domain& d, const star& s);

std::optional<int> star_dim(const domain& d, const star& s);

bool is_star_valuation_overring(const domain& d, const overring_ref& V, const star& s);
verdict is_linked(const domain& d, const overring_ref& T, const star& s,
                  const star& s_on_t, const sample_plan& p);

flag is_quasi_star_integrally_closed(const domain& d, const star& s);
flag is_krull(const domain& d);
bool integrally_closed(const domain& d);  // structural, about D itself

classification_report classify(const domain& d, const star& s, const sample_plan& p);

// the Krull-overring criterion for pull(t_T)-type operations: T Krull and
// D_{Q cap D} = T_Q for every t_T-maximal Q of T
flag krull_overring_criterion(const domain& d, const overring_ref& t);

}  // namespace semistar
