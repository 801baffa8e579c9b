#include <catch2/catch_amalgamated.hpp>

#include "geomforge/forms.hpp"

#include <random>
#include <set>

using namespace geomforge;

namespace {

FMat mat_from(const Gf& F, unsigned n, std::initializer_list<int> vals) {
    FMat m(F, n, n);
    auto it = vals.begin();
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) m.at(r, c) = F.from_int(*it++);
    return m;
}

PseudoQuadraticForm symplectic_standard(const Gf& F, unsigned m) {
    FMat G(F, 2 * m, 2 * m);
    for (unsigned i = 0; i < m; ++i) G.at(2 * i, 2 * i + 1) = 1;
    FormParameter par(FieldAuto::identity(F), F.minus_one(), LambdaTag::Full);
    return PseudoQuadraticForm(SesquilinearForm(FieldAuto::identity(F), G), par);
}

// q(x) = x1 x2 + x3 x4 + x5^2 over GF(2^k): the slightly degenerate example.
PseudoQuadraticForm dim5_char2_form(const Gf& F) {
    FMat G(F, 5, 5);
    G.at(0, 1) = 1;
    G.at(2, 3) = 1;
    G.at(4, 4) = 1;
    FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
    return PseudoQuadraticForm(SesquilinearForm(FieldAuto::identity(F), G), par);
}

PseudoQuadraticForm pull_back(const PseudoQuadraticForm& pq, const FMat& T) {
    FMat G2 = T.map(pq.param().sigma()).transpose() * pq.f().gram() * T;
    return PseudoQuadraticForm(SesquilinearForm(pq.param().sigma(), G2), pq.param());
}

// Oracle: witt index by filtering the full Grassmannian at every dimension.
unsigned witt_index_brute(const PseudoQuadraticForm& pq) {
    unsigned m = 0;
    for (unsigned k = 1; k <= pq.dim(); ++k)
        for (const auto& S : enumerate_grassmannian(pq.dim(), k, pq.field()))
            if (pq.totally_isotropic(S)) {
                m = k;
                break;
            }
    return m;
}

} // namespace

TEST_CASE("hermitianize") {
    SECTION("strict upper triangular with eps=-1 over GF(5) gives the alternating Gram") {
        const Gf& F = field_make(5, 1);
        SesquilinearForm f(FieldAuto::identity(F), mat_from(F, 2, {0, 1, 0, 0}));
        FMat H = hermitianize(f, F.neg(1));
        REQUIRE(H == mat_from(F, 2, {0, 1, -1, 0}));
    }
    SECTION("symmetric f with eps=1 in odd characteristic doubles") {
        const Gf& F = field_make(3, 1);
        FMat G = mat_from(F, 2, {1, 2, 2, 0});
        SesquilinearForm f(FieldAuto::identity(F), G);
        REQUIRE(hermitianize(f, 1) == G + G);
    }
    SECTION("GF(4) Frobenius, eps=1, f=[[1]]: h vanishes and h(v,v) is the trace of f(v,v)") {
        const Gf& F = field_make(2, 2);
        FieldAuto sigma = FieldAuto::frobenius(F);
        SesquilinearForm f(sigma, mat_from(F, 1, {1}));
        FMat H = hermitianize(f, 1);
        REQUIRE(H.is_zero());
        FormParameter par(sigma, 1, LambdaTag::FixedSet);
        PseudoQuadraticForm pq(f, par);
        for (std::uint64_t v = 0; v < 4; ++v) {
            std::uint32_t fv = f.eval(v, v);
            std::uint32_t trace = F.add(fv, F.frobenius(fv));
            REQUIRE(pq.h(v, v) == trace);
        }
    }
    SECTION("inconsistent eps is rejected") {
        const Gf& F = field_make(5, 1);
        SesquilinearForm f(FieldAuto::identity(F), mat_from(F, 2, {0, 1, 0, 0}));
        REQUIRE_THROWS_AS(hermitianize(f, 2), std::invalid_argument); // 2*2 = 4 != 1
    }
    SECTION("every constructed h satisfies the hermitian identity on all basis pairs") {
        const Gf& F9 = field_make(3, 2);
        std::mt19937_64 rng(5);
        FieldAuto sigma = FieldAuto::frobenius(F9);
        for (int t = 0; t < 20; ++t) {
            SesquilinearForm f(sigma, random_matrix(F9, 3, 3, rng));
            FMat H = hermitianize(f, 1);
            for (unsigned i = 0; i < 3; ++i)
                for (unsigned j = 0; j < 3; ++j)
                    REQUIRE(H.at(i, j) == sigma(H.at(j, i)));
        }
    }
}

TEST_CASE("is_reflexive") {
    const Gf& F2 = field_make(2, 1);
    SECTION("hermitian forms are reflexive") {
        const Gf& F = field_make(3, 1);
        SesquilinearForm f(FieldAuto::identity(F), mat_from(F, 2, {0, 1, 0, 0}));
        SesquilinearForm h(FieldAuto::identity(F), hermitianize(f, F.neg(1)));
        REQUIRE(is_reflexive(h));
    }
    SECTION("strictly upper triangular over GF(2) is not reflexive") {
        SesquilinearForm f(FieldAuto::identity(F2), mat_from(F2, 2, {0, 1, 0, 0}));
        REQUIRE_FALSE(is_reflexive(f));
        REQUIRE(f.eval(1 /*e1*/, 2 /*e2*/) == 1);
        REQUIRE(f.eval(2, 1) == 0);
    }
    SECTION("the zero form is reflexive") {
        SesquilinearForm z(FieldAuto::identity(F2), FMat(F2, 3, 3));
        REQUIRE(is_reflexive(z));
    }
}

TEST_CASE("form parameters") {
    SECTION("GF(4) unitary: Lambda = GF(2) equals both trace groups") {
        const Gf& F = field_make(2, 2);
        FieldAuto sigma = FieldAuto::frobenius(F);
        auto rep = form_parameter_check(F, sigma, 1, {0, 1});
        REQUIRE(rep.valid());
        REQUIRE(rep.lower == std::vector<std::uint32_t>{0, 1});
        REQUIRE(rep.upper == std::vector<std::uint32_t>{0, 1});
        FormParameter par(sigma, 1, LambdaTag::FixedSet);
        REQUIRE(par.lambda() == std::vector<std::uint32_t>{0, 1});
    }
    SECTION("GF(2), sigma=id, eps=1: valid Lambdas are exactly {0} and GF(2)") {
        const Gf& F = field_make(2, 1);
        FieldAuto id = FieldAuto::identity(F);
        REQUIRE(form_parameter_check(F, id, 1, {0}).valid());
        REQUIRE(form_parameter_check(F, id, 1, {0, 1}).valid());
        REQUIRE_FALSE(form_parameter_check(F, id, 1, {1}).valid());
        REQUIRE_FALSE(form_parameter_check(F, id, 1, {}).valid());
    }
    SECTION("Lambda = 0 forces sigma = id and eps = 1") {
        const Gf& F4 = field_make(2, 2);
        // with Frobenius, D_{sigma,-1} = GF(2) is not inside {0}
        REQUIRE_FALSE(form_parameter_check(F4, FieldAuto::frobenius(F4), 1, {0}).valid());
        auto good = form_parameter_check(F4, FieldAuto::identity(F4), 1, {0});
        REQUIRE(good.valid());
        REQUIRE(good.zero_implication_ok);
        const Gf& F3 = field_make(3, 1);
        // (id, -1, {0}) over GF(3): D_{id,1} = {2c} = D is not inside {0}
        REQUIRE_FALSE(form_parameter_check(F3, FieldAuto::identity(F3), F3.neg(1), {0}).valid());
    }
    SECTION("GF(4) middle Lambda with sigma=id fails stability (perfect field)") {
        const Gf& F = field_make(2, 2);
        auto rep = form_parameter_check(F, FieldAuto::identity(F), 1, {0, 1});
        REQUIRE_FALSE(rep.valid());
        REQUIRE_FALSE(rep.stable_ok);
        REQUIRE_FALSE(rep.square_module_ok);
    }
    SECTION("constructor rejects invalid parameters") {
        const Gf& F = field_make(2, 2);
        REQUIRE_THROWS_AS(FormParameter(FieldAuto::identity(F), 1, LambdaTag::Explicit, {0, 1}),
                          std::invalid_argument);
    }
}

TEST_CASE("scale_form") {
    SECTION("s = 1 is the identity") {
        const Gf& F = field_make(3, 1);
        auto pq = symplectic_standard(F, 2);
        auto pq2 = scale_form(pq, 1);
        REQUIRE(pq2.f().gram() == pq.f().gram());
        REQUIRE(pq2.param().eps() == pq.param().eps());
        REQUIRE(pq2.param().lambda() == pq.param().lambda());
    }
    SECTION("commutative sigma=id: eps and sigma unchanged, Lambda scales") {
        const Gf& F = field_make(5, 1);
        auto pq = symplectic_standard(F, 1);
        auto pq2 = scale_form(pq, 3);
        REQUIRE(pq2.param().eps() == pq.param().eps());
        REQUIRE(pq2.param().lambda() == pq.param().lambda()); // 3*GF(5) = GF(5)
        REQUIRE(pq2.f().gram() == pq.f().gram().scaled(3));
    }
    SECTION("GF(9) hermitian form: scaling rule eps' = s * s^-sigma * eps") {
        const Gf& F = field_make(3, 2);
        FieldAuto sigma = FieldAuto::frobenius(F);
        FMat G = FMat::identity(F, 2);
        FormParameter par(sigma, 1, LambdaTag::FixedSet);
        PseudoQuadraticForm pq(SesquilinearForm(sigma, G), par);
        // s = -1 has norm 1 and lies in the fixed field: eps stays 1
        std::uint32_t minus1 = F.neg(1);
        REQUIRE(F.mul(minus1, sigma(minus1)) == 1);
        auto keep = scale_form(pq, minus1);
        REQUIRE(keep.param().eps() == 1);
        // an element i with i^2 = -1 also has norm 1 but flips eps to -1
        std::uint32_t im = 0;
        for (std::uint32_t c = 1; c < F.q(); ++c)
            if (F.mul(c, c) == F.neg(1)) { im = c; break; }
        REQUIRE(F.mul(im, sigma(im)) == 1); // norm 1
        auto flip = scale_form(pq, im);
        REQUIRE(flip.param().eps() == F.neg(1));
        // D_{sigma',eps'} = s * D_{sigma,eps}
        auto before = trace_group(F, sigma, 1);
        auto after = trace_group(F, sigma, flip.param().eps());
        std::set<std::uint32_t> scaled;
        for (auto c : before) scaled.insert(F.mul(im, c));
        REQUIRE(std::set<std::uint32_t>(after.begin(), after.end()) == scaled);
    }
    SECTION("totally isotropic point sets are unchanged by scaling") {
        const Gf& F = field_make(2, 1);
        auto pq = dim5_char2_form(F);
        auto pq2 = scale_form(pq, 1);
        REQUIRE(isotropic_points(pq).size() == isotropic_points(pq2).size());
        const Gf& F3 = field_make(3, 1);
        auto sp = symplectic_standard(F3, 2);
        auto sp2 = scale_form(sp, 2);
        REQUIRE(isotropic_points(sp) == isotropic_points(sp2));
    }
    SECTION("s = 0 is rejected") {
        const Gf& F = field_make(3, 1);
        REQUIRE_THROWS_AS(scale_form(symplectic_standard(F, 1), 0), std::invalid_argument);
    }
}

TEST_CASE("radical and degeneracy") {
    SECTION("standard symplectic form is non-degenerate") {
        const Gf& F = field_make(3, 1);
        auto pq = symplectic_standard(F, 1);
        REQUIRE(pq.radical().dim() == 0);
        REQUIRE(pq.is_nondegenerate());
        REQUIRE_FALSE(pq.is_slightly_degenerate());
    }
    SECTION("the 5-dim GF(2) form has radical e5 and is slightly degenerate") {
        const Gf& F = field_make(2, 1);
        auto pq = dim5_char2_form(F);
        Subspace rad = pq.radical();
        REQUIRE(rad.dim() == 1);
        VSpace V(F, 5);
        REQUIRE(subspace_contains(rad, V.basis_vector(4)));
        REQUIRE(pq.is_slightly_degenerate());
        REQUIRE_FALSE(pq.is_nondegenerate());
    }
    SECTION("zero form: radical is everything, not slightly degenerate") {
        const Gf& F = field_make(2, 1);
        FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
        PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), FMat(F, 2, 2)), par);
        REQUIRE(pq.radical().dim() == 2);
        REQUIRE_FALSE(pq.is_slightly_degenerate());
    }
}

TEST_CASE("reduce_slightly_degenerate") {
    SECTION("the 5-dim GF(2) form reduces to the standard symplectic form on GF(2)^4") {
        const Gf& F = field_make(2, 1);
        auto pq = dim5_char2_form(F);
        auto red = reduce_slightly_degenerate(pq);
        REQUIRE(red.reduced.dim() == 4);
        REQUIRE(red.reduced.is_nondegenerate());
        // h-tilde is the block symplectic Gram (char 2: -1 = 1)
        FMat expect(F, 4, 4);
        expect.at(0, 1) = 1;
        expect.at(1, 0) = 1;
        expect.at(2, 3) = 1;
        expect.at(3, 2) = 1;
        REQUIRE(red.reduced.h_gram() == expect);
        // enlarged parameter is all of GF(2): the symplectic case
        REQUIRE(red.reduced.param().lambda_is_full());
        auto cls = classify_form_case(F, red.reduced.param().sigma(), red.reduced.param().eps(),
                                      red.reduced.param().lambda());
        REQUIRE(cls.ok);
        REQUIRE(cls.kind == FormCase::Symplectic);
    }
    SECTION("isotropic point counts match: 15 = 15 over GF(2)") {
        const Gf& F = field_make(2, 1);
        auto pq = dim5_char2_form(F);
        auto red = reduce_slightly_degenerate(pq);
        auto before = isotropic_points(pq);
        auto after = isotropic_points(red.reduced);
        REQUIRE(before.size() == 15);
        REQUIRE(after.size() == 15);
        std::set<Subspace> images;
        for (const auto& P : before) images.insert(reduce_subspace(red, P));
        REQUIRE(images.size() == 15);
        for (const auto& P : after) REQUIRE(images.count(P) == 1);
    }
    SECTION("counts also match at every k up to the index") {
        const Gf& F = field_make(2, 1);
        auto pq = dim5_char2_form(F);
        auto red = reduce_slightly_degenerate(pq);
        for (unsigned k = 1; k <= 2; ++k) {
            auto a = isotropic_grassmannian(pq, k);
            auto b = isotropic_grassmannian(red.reduced, k);
            REQUIRE(a.size() == b.size());
            std::set<Subspace> images;
            for (const auto& U : a) images.insert(reduce_subspace(red, U));
            REQUIRE(images.size() == b.size());
        }
    }
    SECTION("same pipeline over GF(4)") {
        const Gf& F = field_make(2, 2);
        auto pq = dim5_char2_form(F);
        REQUIRE(pq.is_slightly_degenerate());
        auto red = reduce_slightly_degenerate(pq);
        REQUIRE(red.reduced.dim() == 4);
        REQUIRE(isotropic_points(pq).size() == isotropic_points(red.reduced).size());
    }
    SECTION("rejects inputs that are not slightly degenerate") {
        const Gf& F = field_make(3, 1);
        REQUIRE_THROWS_AS(reduce_slightly_degenerate(symplectic_standard(F, 1)),
                          std::invalid_argument);
    }
}

TEST_CASE("witt_index") {
    SECTION("standard symplectic dim 4 has index 2") {
        REQUIRE(witt_index(symplectic_standard(field_make(2, 1), 2)) == 2);
        REQUIRE(witt_index(symplectic_standard(field_make(3, 1), 2)) == 2);
    }
    SECTION("anisotropic binary form plus hyperbolic pair over GF(2) has index 1") {
        const Gf& F = field_make(2, 1);
        FMat G(F, 4, 4); // q(x) = x1^2 + x1 x2 + x2^2 + x3 x4
        G.at(0, 0) = 1;
        G.at(0, 1) = 1;
        G.at(1, 1) = 1;
        G.at(2, 3) = 1;
        FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
        PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), G), par);
        // oracle: x^2+xy+y^2 has only the trivial zero over GF(2)
        for (unsigned x = 0; x < 2; ++x)
            for (unsigned y = 0; y < 2; ++y)
                if (x || y) REQUIRE((x * x + x * y + y * y) % 2 == 1);
        REQUIRE(witt_index(pq) == 1);
        REQUIRE(witt_index_witness(pq).dim() == 1);
    }
    SECTION("zero-dimensional space has index 0") {
        const Gf& F = field_make(2, 1);
        FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
        PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), FMat(F, 0, 0)), par);
        REQUIRE(witt_index(pq) == 0);
    }
    SECTION("matches the full-Grassmannian oracle on small mixed cases") {
        std::mt19937_64 rng(2026);
        const Gf& F2 = field_make(2, 1);
        const Gf& F3 = field_make(3, 1);
        for (int t = 0; t < 10; ++t) {
            FMat G = random_matrix(F3, 3, 3, rng);
            FormParameter par(FieldAuto::identity(F3), 1, LambdaTag::Zero);
            PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F3), G), par);
            REQUIRE(witt_index(pq) == witt_index_brute(pq));
        }
        for (int t = 0; t < 10; ++t) {
            FMat G = random_matrix(F2, 4, 4, rng);
            FormParameter par(FieldAuto::identity(F2), 1, LambdaTag::Zero);
            PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F2), G), par);
            REQUIRE(witt_index(pq) == witt_index_brute(pq));
        }
    }
    SECTION("invariant under scaling and base change") {
        std::mt19937_64 rng(31337);
        const Gf& F = field_make(3, 1);
        auto pq = symplectic_standard(F, 2);
        unsigned m = witt_index(pq);
        for (std::uint32_t s = 1; s < 3; ++s) REQUIRE(witt_index(scale_form(pq, s)) == m);
        for (int t = 0; t < 5; ++t)
            REQUIRE(witt_index(pull_back(pq, random_invertible(F, 4, rng))) == m);
    }
}

TEST_CASE("isotropic_grassmannian") {
    const Gf& F = field_make(2, 1);
    auto pq = symplectic_standard(F, 2);
    REQUIRE(isotropic_grassmannian(pq, 1).size() == 15); // all points of PG(3,2)
    REQUIRE(isotropic_grassmannian(pq, 2).size() == 15); // the Sp4(2) quadrangle lines
    REQUIRE(isotropic_grassmannian(pq, 0).size() == 1);
}

TEST_CASE("q_f is sigma-quadratic modulo Lambda") {
    std::mt19937_64 rng(808);
    const Gf& F = field_make(2, 2);
    FieldAuto sigma = FieldAuto::frobenius(F);
    FormParameter par(sigma, 1, LambdaTag::FixedSet);
    SesquilinearForm f(sigma, random_matrix(F, 3, 3, rng));
    PseudoQuadraticForm pq(f, par);
    VSpace V(F, 3);
    for (int t = 0; t < 200; ++t) {
        std::uint64_t v = rng() % V.count();
        std::uint32_t a = rng() % F.q();
        std::uint32_t lhs = pq.q_rep(V.smul(v, a));
        std::uint32_t rhs = pq.param().coset_rep(F.mul(F.mul(sigma(a), pq.f().eval(v, v)), a));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("witt_decompose") {
    SECTION("hyperbolic module of rank m has trivial anisotropic kernel") {
        for (unsigned m : {1u, 2u}) {
            const Gf& F = field_make(2, 1);
            FMat G(F, 2 * m, 2 * m);
            for (unsigned i = 0; i < m; ++i) G.at(i, m + i) = 1; // [[0, I],[0, 0]]
            FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
            PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), G), par);
            auto wd = witt_decompose(pq);
            REQUIRE(wd.index == m);
            REQUIRE(wd.anisotropic.dim() == 0);
        }
    }
    SECTION("GF(3) diag(1,1,1): one pair and a line left over") {
        const Gf& F = field_make(3, 1);
        FMat G = FMat::identity(F, 3);
        FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
        PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), G), par);
        // oracle: (1,1,1) is isotropic since 1+1+1 = 0 mod 3
        REQUIRE(pq.isotropic_vector(VSpace(F, 3).encode({1, 1, 1})));
        auto wd = witt_decompose(pq);
        REQUIRE(wd.index == 1);
        REQUIRE(wd.anisotropic.dim() == 1);
    }
    SECTION("anisotropic binary form over GF(2): no pairs at all") {
        const Gf& F = field_make(2, 1);
        FMat G(F, 2, 2);
        G.at(0, 0) = 1;
        G.at(0, 1) = 1;
        G.at(1, 1) = 1;
        FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
        PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), G), par);
        auto wd = witt_decompose(pq);
        REQUIRE(wd.index == 0);
        REQUIRE(wd.anisotropic == Subspace::full(F, 2));
    }
    SECTION("pair properties and reassembly") {
        std::mt19937_64 rng(4242);
        for (const Gf* Fp : {&field_make(2, 1), &field_make(3, 1), &field_make(2, 2)}) {
            const Gf& F = *Fp;
            int done = 0;
            while (done < 5) {
                FMat G = random_matrix(F, 4, 4, rng);
                FormParameter par(FieldAuto::identity(F), F.p() == 2 ? 1 : F.neg(1),
                                  F.p() == 2 ? LambdaTag::Zero : LambdaTag::Full);
                PseudoQuadraticForm pq(SesquilinearForm(FieldAuto::identity(F), G), par);
                if (!pq.is_nondegenerate()) continue;
                ++done;
                auto wd = witt_decompose(pq);
                REQUIRE(2 * wd.index + wd.anisotropic.dim() == 4);
                VSpace V(F, 4);
                std::uint32_t eps = pq.param().eps();
                for (std::size_t i = 0; i < wd.pairs.size(); ++i) {
                    auto [e, f] = wd.pairs[i];
                    REQUIRE(pq.h(e, f) == 1);
                    REQUIRE(pq.isotropic_vector(e));
                    REQUIRE(pq.isotropic_vector(f));
                    for (std::size_t j = i + 1; j < wd.pairs.size(); ++j) {
                        REQUIRE(pq.h(e, wd.pairs[j].first) == 0);
                        REQUIRE(pq.h(e, wd.pairs[j].second) == 0);
                        REQUIRE(pq.h(f, wd.pairs[j].first) == 0);
                        REQUIRE(pq.h(f, wd.pairs[j].second) == 0);
                    }
                    for (auto c : wd.anisotropic.cols()) {
                        REQUIRE(pq.h(e, c) == 0);
                        REQUIRE(pq.h(f, c) == 0);
                    }
                }
                // change of basis to (pairs, kernel) reproduces the block h-Gram
                unsigned n = 4;
                FMat T(F, n, n);
                unsigned col = 0;
                for (auto [e, f] : wd.pairs) {
                    for (unsigned rr = 0; rr < n; ++rr) T.at(rr, col) = V.digit(e, rr);
                    ++col;
                    for (unsigned rr = 0; rr < n; ++rr) T.at(rr, col) = V.digit(f, rr);
                    ++col;
                }
                for (auto c : wd.anisotropic.cols()) {
                    for (unsigned rr = 0; rr < n; ++rr) T.at(rr, col) = V.digit(c, rr);
                    ++col;
                }
                REQUIRE(T.det() != 0);
                auto pulled = pull_back(pq, T);
                VSpace Vn(F, n);
                for (std::size_t i = 0; i < wd.pairs.size(); ++i) {
                    REQUIRE(pulled.h_gram().at(2 * i, 2 * i + 1) == 1);
                    REQUIRE(pulled.h_gram().at(2 * i + 1, 2 * i) == eps);
                    REQUIRE(pulled.q_rep(Vn.basis_vector(2 * i)) == pulled.param().coset_rep(0));
                    REQUIRE(pulled.q_rep(Vn.basis_vector(2 * i + 1)) ==
                            pulled.param().coset_rep(0));
                }
            }
        }
    }
    SECTION("degenerate input is a typed error") {
        const Gf& F = field_make(2, 1);
        REQUIRE_THROWS_AS(witt_decompose(dim5_char2_form(F)), std::invalid_argument);
    }
}

TEST_CASE("classify_form_case") {
    SECTION("(id,-1,D) over GF(5) is symplectic") {
        const Gf& F = field_make(5, 1);
        std::vector<std::uint32_t> all;
        for (std::uint32_t c = 0; c < 5; ++c) all.push_back(c);
        auto r = classify_form_case(F, FieldAuto::identity(F), F.neg(1), all);
        REQUIRE(r.ok);
        REQUIRE(r.kind == FormCase::Symplectic);
    }
    SECTION("(id,1,0) over GF(3) is orthogonal") {
        const Gf& F = field_make(3, 1);
        auto r = classify_form_case(F, FieldAuto::identity(F), 1, {0});
        REQUIRE(r.ok);
        REQUIRE(r.kind == FormCase::Orthogonal);
    }
    SECTION("(Frobenius,1,FixedSet) over GF(4) is classical unitary with Lambda = GF(2)") {
        const Gf& F = field_make(2, 2);
        auto r = classify_form_case(F, FieldAuto::frobenius(F), 1, {0, 1});
        REQUIRE(r.ok);
        REQUIRE(r.kind == FormCase::ClassicalUnitary);
        REQUIRE(r.lambda == std::vector<std::uint32_t>{0, 1});
    }
    SECTION("defective-orthogonal shape is reported impossible over finite fields") {
        const Gf& F = field_make(2, 2);
        auto r = classify_form_case(F, FieldAuto::identity(F), 1, {0, 1});
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.kind == FormCase::DefectiveOrthogonal);
    }
    SECTION("restricted-unitary shape is reported impossible over finite fields") {
        const Gf& F = field_make(2, 2);
        auto r = classify_form_case(F, FieldAuto::frobenius(F), 1, {0});
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.kind == FormCase::RestrictedUnitary);
    }
}
