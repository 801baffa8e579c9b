#include <catch2/catch_amalgamated.hpp>

#include "geomforge/gf.hpp"
#include "geomforge/permgroup.hpp"

#include <set>

using namespace geomforge;

namespace {

Perm cycle(unsigned n, std::initializer_list<std::uint32_t> pts) {
    Perm p = Perm::identity(n);
    auto it = pts.begin();
    std::uint32_t first = *it;
    std::uint32_t prev = first;
    ++it;
    for (; it != pts.end(); ++it) {
        p.img[prev] = *it;
        prev = *it;
    }
    p.img[prev] = first;
    return p;
}

PermGroup sym(unsigned n) {
    std::vector<Perm> gens;
    if (n >= 2) gens.push_back(cycle(n, {0, 1}));
    if (n >= 3) {
        Perm c = Perm::identity(n);
        for (unsigned i = 0; i < n; ++i) c.img[i] = (i + 1) % n;
        gens.push_back(c);
    }
    return PermGroup(n, gens);
}

PermGroup alt(unsigned n) {
    std::vector<Perm> gens;
    for (unsigned i = 0; i + 2 < n; ++i) gens.push_back(cycle(n, {i, i + 1, i + 2}));
    if (gens.empty()) gens.push_back(Perm::identity(n));
    return PermGroup(n, gens);
}

// PSL(2,q) in its natural action on the projective line GF(q) u {oo},
// from the Moebius maps x -> x+a (a over an additive basis) and x -> -1/x.
// Independent of the matrix-group machinery, so the group-theory tests
// don't lean on it.
PermGroup psl2(unsigned q) {
    unsigned p = 2;
    while (q % p) ++p;
    unsigned k = 0;
    for (unsigned t = q; t > 1; t /= p) ++k;
    const Gf& F = field_make(p, k);
    unsigned n = q + 1; // point q is infinity
    std::vector<Perm> gens;
    std::uint32_t basis = 1;
    for (unsigned e = 0; e < k; ++e) {
        Perm t = Perm::identity(n);
        for (std::uint32_t x = 0; x < q; ++x) t.img[x] = F.add(x, basis);
        gens.push_back(t);
        basis *= p; // codes of 1, x, x^2, ... are p-powers
    }
    Perm s = Perm::identity(n);
    s.img[q] = 0;
    s.img[0] = q;
    for (std::uint32_t x = 1; x < q; ++x) s.img[x] = F.neg(F.inv(x));
    gens.push_back(s);
    return PermGroup(n, gens);
}

// AGL(1,5): x -> x+1 and x -> 2x on GF(5).
PermGroup agl1_5() {
    Perm t = Perm::identity(5), m = Perm::identity(5);
    for (unsigned x = 0; x < 5; ++x) {
        t.img[x] = (x + 1) % 5;
        m.img[x] = (2 * x) % 5;
    }
    return PermGroup(5, {t, m});
}

} // namespace

TEST_CASE("orbit, stabilizer, order") {
    SECTION("trivial group") {
        PermGroup triv(4, {});
        REQUIRE(triv.order() == 1);
        REQUIRE(triv.orbit(2) == std::vector<std::uint32_t>{2});
    }
    SECTION("Sym(3) has order 6") { REQUIRE(sym(3).order() == 6); }
    SECTION("PSL(2,7) on 8 points has order 168") {
        PermGroup G = psl2(7);
        REQUIRE(G.order() == 168);
        REQUIRE(G.is_transitive());
    }
    SECTION("orbit-stabilizer identity") {
        for (const PermGroup& G : {sym(4), alt(5), psl2(5), agl1_5()}) {
            for (std::uint32_t x = 0; x < G.degree(); ++x)
                REQUIRE(G.orbit(x).size() * G.stabilizer(x).order() == G.order());
        }
    }
    SECTION("membership") {
        PermGroup G = alt(4);
        REQUIRE(G.contains(cycle(4, {0, 1, 2})));
        REQUIRE_FALSE(G.contains(cycle(4, {0, 1})));
    }
    SECTION("order matches brute-force closure for every group of order <= 5000 here") {
        for (const PermGroup& G :
             {sym(3), sym(4), sym(5), alt(4), alt(5), alt(6), psl2(2), psl2(3), psl2(4), psl2(5),
              psl2(7), psl2(9), agl1_5()}) {
            REQUIRE(G.order() == brute_force_order(G.generators(), G.degree()));
        }
    }
}

TEST_CASE("elements enumeration") {
    PermGroup G = sym(4);
    auto elems = G.elements();
    REQUIRE(elems.size() == 24);
    std::set<Perm> dedup(elems.begin(), elems.end());
    REQUIRE(dedup.size() == 24);
    Budget tiny;
    tiny.max_group_order = 10;
    REQUIRE_THROWS_AS(G.elements(tiny), budget_error);
}

TEST_CASE("transitivity_degree") {
    SECTION("Sym(n) on n points is n-transitive") {
        REQUIRE(transitivity_degree(sym(3)) == 3);
        REQUIRE(transitivity_degree(sym(5)) == 5);
    }
    SECTION("Alt(n) is (n-2)-transitive") {
        REQUIRE(transitivity_degree(alt(5)) == 3);
        REQUIRE(transitivity_degree(alt(6)) == 4);
    }
    SECTION("PSL(2,q) on the projective line") {
        REQUIRE(transitivity_degree(psl2(5)) == 2);
        REQUIRE(transitivity_degree(psl2(4)) == 3); // PSL(2,4) is sharply 3-transitive
    }
    SECTION("intransitive group reports 0") {
        Perm g = cycle(4, {0, 1});
        REQUIRE(transitivity_degree(PermGroup(4, {g})) == 0);
    }
}

TEST_CASE("derived subgroup and perfectness") {
    SECTION("PSL(2,2) and PSL(2,3) are not perfect") {
        REQUIRE_FALSE(is_perfect(psl2(2)));
        REQUIRE_FALSE(is_perfect(psl2(3)));
    }
    SECTION("PSL(2,5) is perfect with derived subgroup of order 60") {
        PermGroup G = psl2(5);
        REQUIRE(derived_subgroup(G).order() == 60);
        REQUIRE(is_perfect(G));
    }
    SECTION("derived subgroup is normal (closed under conjugation by generators)") {
        for (const PermGroup& G : {sym(4), psl2(3), agl1_5()}) {
            PermGroup D = derived_subgroup(G);
            for (const auto& g : G.generators())
                for (const auto& d : D.generators())
                    REQUIRE(D.contains(g * d * g.inverse()));
        }
    }
    SECTION("derived series of Sym(4)") {
        auto orders = detail::derived_series_orders(sym(4));
        REQUIRE(orders == std::vector<std::uint64_t>{24, 12, 4, 1});
    }
}

TEST_CASE("is_simple") {
    REQUIRE(is_simple(psl2(7))); // order 168
    REQUIRE(is_simple(alt(5)));
    REQUIRE_FALSE(is_simple(psl2(3))); // Alt(4) has the Klein four group
    REQUIRE_FALSE(is_simple(sym(4)));
    REQUIRE_FALSE(is_simple(PermGroup(3, {})));
}

TEST_CASE("conjugacy classes of Sym(4)") {
    auto classes = conjugacy_classes(sym(4));
    REQUIRE(classes.size() == 5);
    std::multiset<std::size_t> sizes;
    for (const auto& c : classes) sizes.insert(c.size());
    REQUIRE(sizes == std::multiset<std::size_t>{1, 3, 6, 6, 8});
}

TEST_CASE("regular_normal_subgroups") {
    SECTION("2-transitive PSL(2,5): stabilizer of infinity has the unique order-5 translations") {
        auto rns = regular_normal_subgroups(psl2(5), 5);
        REQUIRE(rns.size() == 1);
        REQUIRE(rns[0].order() == 5);
        // regular: only the identity fixes a point of the complement
        for (const auto& e : rns[0].elements())
            if (!e.is_identity())
                for (std::uint32_t x = 0; x < 5; ++x) REQUIRE(e(x) != x);
    }
    SECTION("sharply 2-transitive AGL(1,5) at 0: exactly one, of order 4") {
        auto rns = regular_normal_subgroups(agl1_5(), 0);
        REQUIRE(rns.size() == 1);
        REQUIRE(rns[0].order() == 4);
    }
    SECTION("Alt(6) point stabilizer has none") {
        REQUIRE(regular_normal_subgroups(alt(6), 0).empty());
    }
}

TEST_CASE("iso_small") {
    SECTION("PSL(2,2) equals Sym(3)") {
        auto r = iso_small(psl2(2), sym(3));
        REQUIRE(r.isomorphic);
        REQUIRE(verify_iso_words(r.gen_from, r.gen_to, 3, 3));
    }
    SECTION("PSL(2,3) equals Alt(4)") {
        auto r = iso_small(psl2(3), alt(4));
        REQUIRE(r.isomorphic);
        REQUIRE(verify_iso_words(r.gen_from, r.gen_to, 4, 4));
    }
    SECTION("PSL(2,9) equals Alt(6)") {
        auto r = iso_small(psl2(9), alt(6));
        REQUIRE(r.isomorphic);
        REQUIRE(verify_iso_words(r.gen_from, r.gen_to, 10, 6));
        REQUIRE(PermGroup(6, r.gen_to).order() == 360); // images really generate Alt(6)
    }
    SECTION("two non-isomorphic groups of order 12") {
        PermGroup a4 = alt(4);
        Perm rot = Perm::identity(6);
        for (unsigned i = 0; i < 6; ++i) rot.img[i] = (i + 1) % 6;
        Perm flip = Perm::identity(6);
        for (unsigned i = 0; i < 6; ++i) flip.img[i] = (6 - i) % 6;
        PermGroup d6(6, {rot, flip});
        REQUIRE(d6.order() == 12);
        auto r = iso_small(a4, d6);
        REQUIRE_FALSE(r.isomorphic);
        REQUIRE_FALSE(r.certificate.empty());
    }
    SECTION("groups of different order") {
        REQUIRE_FALSE(iso_small(sym(3), sym(4)).isomorphic);
    }
    SECTION("cyclic vs Klein four (both abelian of order 4)") {
        Perm c4 = cycle(4, {0, 1, 2, 3});
        PermGroup C4(4, {c4});
        Perm a = cycle(4, {0, 1}) * cycle(4, {2, 3});
        Perm b = cycle(4, {0, 2}) * cycle(4, {1, 3});
        PermGroup V4(4, {a, b});
        REQUIRE(C4.order() == 4);
        REQUIRE(V4.order() == 4);
        REQUIRE_FALSE(iso_small(C4, V4).isomorphic);
        REQUIRE(iso_small(V4, V4).isomorphic); // needs a 2-term generating sequence
    }
}

TEST_CASE("permutation text form round-trips") {
    Perm p = cycle(5, {0, 3, 4});
    REQUIRE(Perm::parse(p.to_text()) == p);
    REQUIRE_THROWS_AS(Perm::parse("0 0 1"), std::invalid_argument);
}
