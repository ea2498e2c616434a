#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <semistar/axioms.hpp>

using namespace semistar;

static qelem qe(long x, long y) { return qelem{Rat(x), Rat(y)}; }

// truncated power-series brute check of z * B <= A at precision X^8: probe a
// battery of members of B and test the products elementwise
static bool series_colon_holds(const domain& d, const pull_elem& z, const ideal& B,
                               const ideal& A) {
    std::vector<pull_elem> battery;
    auto& m = std::get<pull_module>(B.m);
    long n = (m.k == pkind::full_k) ? -4 : m.n;
    for (long j = 0; j <= 8; j++) {
        battery.push_back(pe_xpow(n + j));
        battery.push_back(pe_make(n + j, {qe(0, 1)}));
        battery.push_back(pe_make(n + j, {qe(1, 0), qe(2, 0), qe(0, 3)}));
    }
    for (auto& b : battery) {
        if (!ideal_contains(B, elem_pull(d, b))) continue;
        pull_elem zb = pe_mul(d->pb, z, b);
        if (!ideal_contains(A, elem_pull(d, zb))) return false;
    }
    return true;
}

TEST_CASE("construction and shapes") {
    CHECK_THROWS_AS(dom_pullback_field(4), bad_shape);
    CHECK_NOTHROW(dom_pullback_field(-1));
    CHECK_NOTHROW(dom_pullback_order(-3, 2));
    CHECK_NOTHROW(dom_cusp());
    CHECK(!dom_is_noetherian(dom_pullback_order(-3, 2)));
    CHECK(dom_is_noetherian(dom_pullback_field(-1)));
    CHECK(dom_is_noetherian(dom_cusp()));
}

TEST_CASE("sandwich identity for representable ideals") {
    domain d = dom_pullback_field(-1);
    rng r(11);
    for (int i = 0; i < 60; i++) {
        ideal e = random_ideal(d, r);
        auto lvl = pm_level(std::get<pull_module>(e.m));
        if (!lvl) continue;
        ideal t_up{d, pm_tmark(*lvl)};
        ideal t_dn{d, pm_tmark(*lvl + 1)};
        CHECK(ideal_subset(e, t_up));
        CHECK(ideal_subset(t_dn, e));
        // I * T = X^n T
        overring_ref tr;
        tr.k = overring_ref::kind::pull_t;
        CHECK(over_t_eval(tr, e) == t_up);
    }
}

TEST_CASE("colon correctness against the series brute force") {
    domain d = dom_pullback_field(-1);
    ideal ring = ideal_ring(d);
    ideal T{d, pm_tmark(0)};
    ideal M{d, pm_maximal(d->pb)};
    ideal DT = ideal_colon(ring, T);
    CHECK(DT == M);  // (D : T) = M
    // membership probes agree with the series definition
    CHECK(series_colon_holds(d, pe_xpow(1), T, ring));
    CHECK(series_colon_holds(d, pe_make(1, {qe(0, 1)}), T, ring));
    CHECK(!series_colon_holds(d, pe_const(qe(0, 1)), T, ring));  // w T is not in D
    domain c = dom_cusp();
    ideal cring = ideal_ring(c);
    ideal cT{c, pm_tmark(0)};
    ideal X2T{c, pm_tmark(2)};
    CHECK(ideal_colon(cring, cT) == X2T);  // (D : T) = X^2 T for the cusp
    CHECK(series_colon_holds(c, pe_xpow(2), cT, cring));
    CHECK(!series_colon_holds(c, pe_xpow(1), cT, cring));  // X T is not in D
}

TEST_CASE("field-shape module algebra") {
    domain d = dom_pullback_field(-1);
    const pull_domain& pb = d->pb;
    ideal line1{d, pm_level_field(pb, 0, qe(1, 0))};  // D itself
    CHECK(line1 == ideal_ring(d));
    ideal linew{d, pm_level_field(pb, 0, qe(0, 1))};  // X^0(Q w + XT)
    // distinct lines at the same level span X^n T
    ideal sum = ideal_add(line1, linew);
    CHECK(sum == ideal{d, pm_tmark(0)});
    // intersection of distinct lines drops a level
    CHECK(ideal_intersect(line1, linew) == ideal{d, pm_tmark(1)});
    // lines are principal
    ideal p = ideal_principal(elem_pull(d, pe_make(2, {qe(1, 1)})));
    CHECK(p == ideal{d, pm_level_field(pb, 2, qe(1, 1))});
    // product law on lines
    CHECK(ideal_mul(linew, linew) == ideal{d, pm_level_field(pb, 0, qe(1, 0))});
    // T is finitely generated over k+M (by 1 and w)
    CHECK(ideal_is_fg(ideal{d, pm_tmark(0)}));
    auto g = ideal_gens(ideal{d, pm_tmark(0)});
    CHECK(ideal_from_gens(d, g) == ideal{d, pm_tmark(0)});
}

TEST_CASE("order-shape module algebra") {
    domain d = dom_pullback_order(-3, 2);
    const pull_domain& pb = d->pb;
    const quad_order& R = pb.R;
    ideal T{d, pm_tmark(0)};
    CHECK(!ideal_is_fg(T));  // K is not a finitely generated R-module
    ideal lift = ideal{d, pm_lift_prime(pb, special_primes(R)[0])};
    CHECK(ideal_is_fg(lift));
    CHECK(ideal_is_integral(lift));
    // (q + M)(q' + M) keeps the V-part product
    ideal sq = ideal_mul(lift, lift);
    CHECK(std::get<pull_module>(sq.m).k == pkind::level);
    // V part of the square of the singular lift is 2 P2
    qlattice p2 = special_primes(R)[0].lat;
    CHECK(std::get<pull_module>(sq.m).vmod.lat == lat_scale(R, p2, qe(2, 0)));
    // colon (D : q+M) = (R : q) + M as a module
    ideal c = ideal_colon(ideal_ring(d), lift);
    CHECK(std::get<pull_module>(c.m).k == pkind::level);
    CHECK(std::get<pull_module>(c.m).vmod.lat == lat_colon(R, lattice_ring(R), p2));
    // M = XT, M^2 = X^2 T over the order base too
    ideal M{d, pm_maximal(pb)};
    CHECK(ideal_mul(M, M) == ideal{d, pm_tmark(2)});
}

TEST_CASE("cusp module algebra") {
    domain c = dom_cusp();
    ideal D = ideal_ring(c);
    ideal N{c, pm_maximal(c->pb)};
    CHECK(N == ideal{c, pm_tmark(2)});
    // cusp lines are principal: X^n (1 + cX) D
    ideal l = ideal_principal(elem_pull(c, pe_make(1, {qe(1, 0), qe(2, 0)})));
    CHECK(l == ideal{c, pm_level_cusp(1, qe(2, 0))});
    // product adds the line parameters
    ideal l2 = ideal_mul(l, l);
    CHECK(l2 == ideal{c, pm_level_cusp(2, qe(4, 0))});
    // sum of distinct lines at one level is X^n T
    ideal l3{c, pm_level_cusp(1, qe(0, 0))};
    CHECK(ideal_add(l, l3) == ideal{c, pm_tmark(1)});
    // intersection of distinct lines drops two levels
    CHECK(ideal_intersect(l, l3) == ideal{c, pm_tmark(3)});
    // colon subtracts parameters
    CHECK(ideal_colon(l, l3) == ideal{c, pm_level_cusp(0, qe(2, 0))});
    // (N N^-1) = X^2 T != D: the maximal ideal is not invertible
    ideal NNi = ideal_mul(N, ideal_colon(D, N));
    CHECK(NNi == N);
    CHECK(!(NNi == D));
    // membership: X^3 + 2 X^4 in the line (1 + 2X) at level 3? wait:
    // X^3(1+2X) has coefficients at X^3, X^4
    CHECK(ideal_contains(ideal{c, pm_level_cusp(3, qe(2, 0))},
                         elem_pull(c, pe_make(3, {qe(1, 0), qe(2, 0)}))));
    CHECK(!ideal_contains(ideal{c, pm_level_cusp(3, qe(2, 0))},
                          elem_pull(c, pe_make(3, {qe(1, 0), qe(3, 0)}))));
    // no elements of order n+1 in a cusp line module
    CHECK(!ideal_contains(ideal{c, pm_level_cusp(3, qe(2, 0))},
                          elem_pull(c, pe_xpow(4))));
    CHECK(ideal_contains(ideal{c, pm_level_cusp(3, qe(2, 0))},
                         elem_pull(c, pe_xpow(5))));
}

TEST_CASE("quasi-maximal structure of star_T") {
    overring_ref tr;
    tr.k = overring_ref::kind::pull_t;
    star sT = mk_over_t(tr);
    for (domain d : {dom_pullback_field(-1), dom_pullback_order(-3, 2), dom_cusp()}) {
        prime_family f = quasi_max_set(d, sT);
        REQUIRE(f.members.size() == 1);
        CHECK(!f.generic);
        CHECK(f.members[0].k == prime_id::pk::pb_m);
    }
    // D_M = T for the order base, D_M = D otherwise
    CHECK(prime_loc_is_dvr(dom_pullback_order(-3, 2),
                           prime_id{prime_id::pk::pb_m, 0, {}}));
    CHECK(!prime_loc_is_dvr(dom_pullback_field(-1), prime_id{prime_id::pk::pb_m, 0, {}}));
    CHECK(!prime_loc_is_dvr(dom_cusp(), prime_id{prime_id::pk::pb_m, 0, {}}));
}

TEST_CASE("cancellation failure shape in k+M") {
    domain d = dom_pullback_field(-1);
    ideal M{d, pm_maximal(d->pb)};
    ideal T{d, pm_tmark(0)};
    ideal D = ideal_ring(d);
    CHECK(ideal_mul(M, T) == M);
    CHECK(ideal_mul(M, D) == M);
    CHECK(!(T == D));
}

TEST_CASE("element membership in D") {
    domain d = dom_pullback_field(-1);
    CHECK(elem_in_ring(elem_pull(d, pe_const(qe(3, 0)))));
    CHECK(!elem_in_ring(elem_pull(d, pe_const(qe(0, 1)))));  // w not in k+M
    CHECK(elem_in_ring(elem_pull(d, pe_make(1, {qe(0, 1)}))));  // wX in M
    CHECK(!elem_in_ring(elem_pull(d, pe_xpow(-1))));
    domain c = dom_cusp();
    CHECK(elem_in_ring(elem_pull(c, pe_xpow(2))));
    CHECK(elem_in_ring(elem_pull(c, pe_xpow(3))));
    CHECK(!elem_in_ring(elem_pull(c, pe_xpow(1))));  // X not in K[[X^2,X^3]]
    domain o = dom_pullback_order(-3, 2);
    CHECK(elem_in_ring(elem_pull(o, pe_const(qe(1, 1)))));   // 1+w in R
    qelem om{Rat(1, 2), Rat(1, 2)};
    om.x.canonicalize();
    om.y.canonicalize();
    CHECK(!elem_in_ring(elem_pull(o, pe_const(om))));  // omega not in R
    CHECK(elem_in_ring(elem_pull(o, pe_make(1, {om}))));  // omega X in M
}
