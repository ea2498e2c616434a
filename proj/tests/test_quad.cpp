#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <semistar/eval.hpp>

using namespace semistar;

static qelem qe(long x, long y) { return qelem{Rat(x), Rat(y)}; }
static prime_id qp(const quad_prime& q) {
    prime_id p;
    p.k = prime_id::pk::quad_p;
    p.q = q;
    return p;
}

TEST_CASE("make_order validation and derived data") {
    CHECK_THROWS_AS(make_order(0, 1), bad_discriminant);
    CHECK_THROWS_AS(make_order(1, 1), bad_discriminant);
    CHECK_THROWS_AS(make_order(12, 1), bad_discriminant);  // not squarefree
    CHECK_THROWS_AS(make_order(-3, 0), bad_discriminant);
    quad_order zi = make_order(-1, 1);  // Z[i]
    CHECK(zi.tr == 0);
    CHECK(zi.nm == 1);
    quad_order zs3 = make_order(-3, 2);  // Z[sqrt(-3)] = Z + 2 O_K
    CHECK(zs3.tr == 2);
    CHECK(zs3.nm == 4);
    quad_order ei = make_order(-3, 1);  // Z[(1+sqrt(-3))/2]
    CHECK(ei.tr == 1);
    CHECK(ei.nm == 1);
}

TEST_CASE("Z + 2 O_K has the basis of Z[sqrt(-3)]") {
    quad_order o = make_order(-3, 2);
    // tau = 1 + w, so 1 and w = tau - 1 generate the same lattice
    qlattice L = lattice_from_gens(o, {qe(1, 0), qe(0, 1)});
    CHECK(L == lattice_ring(o));
}

TEST_CASE("splitting of rational primes") {
    domain zi = dom_quad(-1, 1);
    auto p5 = primes_over(zi->ord, 5);
    CHECK(p5.size() == 2);  // 5 = (2+i)(2-i)
    CHECK(p5[0].kind == prime_kind::split);
    auto p2 = primes_over(zi->ord, 2);
    CHECK(p2.size() == 1);
    CHECK(p2[0].kind == prime_kind::ramified);
    auto p3 = primes_over(zi->ord, 3);
    CHECK(p3[0].kind == prime_kind::inert);

    domain zs = dom_quad(-3, 2);
    auto q3 = primes_over(zs->ord, 3);
    CHECK(q3.size() == 1);
    CHECK(q3[0].kind == prime_kind::ramified);
    CHECK(q3[0].dvr);
    // P3 = (sqrt(-3)) is principal
    CHECK(q3[0].lat == lattice_principal(zs->ord, qe(0, 1)));
    auto q2 = primes_over(zs->ord, 2);
    CHECK(q2.size() == 1);
    CHECK(q2[0].kind == prime_kind::singular);
    CHECK(!q2[0].dvr);
}

TEST_CASE("special primes and conductor facts in Z[sqrt(-3)]") {
    quad_order o = make_order(-3, 2);
    auto sp = special_primes(o);
    REQUIRE(sp.size() == 1);
    qlattice P2 = sp[0].lat;
    // P2 = (2, 1+w) and equals 2 O_K, the conductor
    CHECK(P2 == lattice_from_gens(o, {qe(2, 0), qe(1, 1)}));
    CHECK(P2 == lat_scale(o, lattice_maximal_order(o), qe(2, 0)));
    // P2 * P2 = 2 * P2 (not invertible)
    CHECK(lat_mul(o, P2, P2) == lat_scale(o, P2, qe(2, 0)));
    // P2^-1 = O_K and P2^v = P2 (divisorial)
    qlattice ring = lattice_ring(o);
    CHECK(lat_colon(o, ring, P2) == lattice_maximal_order(o));
    CHECK(lat_colon(o, ring, lat_colon(o, ring, P2)) == P2);
    CHECK(special_primes(make_order(-1, 1)).empty());
    CHECK(special_primes(make_order(-3, 3)).size() == 1);
}

TEST_CASE("HNF canonicity: generating sets of the same module agree") {
    quad_order o = make_order(-3, 2);
    qlattice a = lattice_from_gens(o, {qe(6, 0), qe(2, 2)});
    qlattice b = lattice_from_gens(o, {qe(2, 2), qe(6, 0), qe(8, 2)});
    CHECK(a == b);
    // scaling by a unit leaves the lattice fixed
    CHECK(lat_scale(o, a, qe(-1, 0)) == a);
}

TEST_CASE("saturation examples") {
    quad_order o = make_order(-3, 2);
    auto P2 = special_primes(o)[0];
    qlattice sixD = lattice_principal(o, qe(6, 0));
    CHECK(saturate_away(o, sixD, {P2}) == lattice_principal(o, qe(3, 0)));
    CHECK(saturate_away(o, sixD, {}) == sixD);
    CHECK(saturate_away(o, P2.lat, {P2}) == lattice_ring(o));
}

TEST_CASE("valuations at DVR primes") {
    quad_order o = make_order(-3, 2);
    auto P3 = primes_over(o, 3)[0];
    CHECK(val_at(o, lattice_principal(o, qe(6, 0)), P3) == 2);
    CHECK(val_at(o, lattice_principal(o, qe(2, 0)), P3) == 0);
    CHECK(val_at(o, lattice_principal(o, qe(0, 1)), P3) == 1);
    auto P7 = primes_over(o, 7)[0];  // 7 inert in Q(sqrt(-3))? N(x+yw)=x^2+3y^2
    CHECK(val_at(o, lattice_principal(o, qe(7, 0)), P7) == 1);
}

TEST_CASE("masked module algebra") {
    domain d = dom_quad(-3, 2);
    const quad_order& o = d->ord;
    auto P2 = special_primes(o)[0];
    auto P3 = primes_over(o, 3)[0];
    ideal sixI = ideal_principal(elem_quad(d, qe(6, 0)));
    ideal masked{d, qm_make(o, std::get<quad_module>(sixI.m).lat, qmode::all_but, {P2})};
    CHECK(!ideal_is_fg(masked));
    // canonical form has the trivialized lattice part
    CHECK(std::get<quad_module>(masked.m).lat == lattice_principal(o, qe(3, 0)));
    // localization data
    CHECK(!ideal_val_at(masked, qp(P2)));
    CHECK(*ideal_val_at(masked, qp(P3)) == 2);
    // product of masked modules
    ideal sq = ideal_mul(masked, masked);
    CHECK(std::get<quad_module>(sq.m).lat == lattice_principal(o, qe(9, 0)));
    // intersection with a lattice restores the constraint at P2
    ideal r = ideal_intersect(masked, sixI);
    CHECK(r == sixI);
    // subset relations
    CHECK(ideal_subset(sixI, masked));
    CHECK(!ideal_subset(masked, sixI));
    // membership: 3/2 lies in the masked module but not in 6D
    qelem z{Rat(3, 2), Rat(0)};
    z.x.canonicalize();
    CHECK(ideal_contains(masked, elem_quad(d, z)));
    CHECK(!ideal_contains(sixI, elem_quad(d, z)));
    // only-mode: localization of 6D at P3
    ideal loc = ideal_localize(sixI, qp(P3));
    CHECK(std::get<quad_module>(loc.m).mode == qmode::only);
    CHECK(*ideal_val_at(loc, qp(P3)) == 2);
    // colon by a module with a bigger mask vanishes
    CHECK_THROWS_AS(ideal_colon(sixI, masked), colon_zero);
}

TEST_CASE("K is the unique top module") {
    domain d = dom_quad(-1, 1);
    ideal k1 = ideal_full_k(d);
    ideal k2 = ideal_mul(k1, ideal_principal(elem_quad(d, qe(5, 0))));
    CHECK(k1 == k2);
    CHECK(ideal_is_full_k(k2));
    CHECK(!ideal_is_fg(k1));
}

TEST_CASE("suborders as overring modules") {
    domain d = dom_quad(-3, 2);
    CHECK_THROWS_AS(lattice_suborder(d->ord, 4), unrepresentable_overring);
    qlattice ok = lattice_suborder(d->ord, 1);
    CHECK(ok == lattice_maximal_order(d->ord));
    CHECK(lattice_suborder(d->ord, 2) == lattice_ring(d->ord));
    // O_K as a D-module is D-stable and idempotent
    CHECK(lat_mul(d->ord, ok, ok) == ok);
}
