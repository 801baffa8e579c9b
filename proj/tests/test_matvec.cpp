#include <catch2/catch_amalgamated.hpp>

#include "geomforge/matvec.hpp"

#include <random>
#include <set>

using namespace geomforge;

namespace {

// Oracle: spans of all k-subsets of nonzero vectors, deduplicated by their
// full vector sets. Exponential, used only on tiny cases.
std::uint64_t count_subspaces_brute(unsigned n, unsigned k, const Gf& F) {
    VSpace V(F, n);
    std::vector<std::uint64_t> nz;
    for (std::uint64_t v = 1; v < V.count(); ++v) nz.push_back(v);
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) return 1;
    if (nz.size() < k) return 0;
    while (true) {
        std::vector<std::uint64_t> cols;
        for (auto i : idx) cols.push_back(nz[i]);
        Subspace S = span_of_columns(F, n, cols);
        if (S.dim() == k) {
            auto vecs = subspace_vectors(S);
            std::sort(vecs.begin(), vecs.end());
            seen.insert(vecs);
        }
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == nz.size() - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (unsigned j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return seen.size();
}

FMat mat_from(const Gf& F, unsigned rows, unsigned cols, std::initializer_list<int> vals) {
    FMat m(F, rows, cols);
    auto it = vals.begin();
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c) m.at(r, c) = F.from_int(*it++);
    return m;
}

} // namespace

TEST_CASE("echelonize") {
    const Gf& F2 = field_make(2, 1);
    SECTION("identity gives the full space") {
        auto [S, rank] = echelonize(FMat::identity(F2, 3));
        REQUIRE(rank == 3);
        REQUIRE(S == Subspace::full(F2, 3));
    }
    SECTION("zero matrix gives the zero subspace") {
        auto [S, rank] = echelonize(FMat(F2, 3, 2));
        REQUIRE(rank == 0);
        REQUIRE(S == Subspace::zero(F2, 3));
    }
    SECTION("dependent columns over GF(2) have rank 2") {
        FMat m = mat_from(F2, 3, 3, {1, 0, 1, 1, 1, 0, 0, 1, 1});
        auto [S, rank] = echelonize(m);
        REQUIRE(rank == 2);
        REQUIRE(S.dim() == 2);
    }
    SECTION("canonical form is invariant under column operations") {
        std::mt19937_64 rng(42);
        for (const Gf* Fp : {&field_make(2, 1), &field_make(3, 1), &field_make(2, 2)}) {
            const Gf& F = *Fp;
            for (int t = 0; t < 60; ++t) {
                FMat m = random_matrix(F, 4, 3, rng);
                FMat g = random_invertible(F, 3, rng);
                REQUIRE(echelonize(m).first == echelonize(m * g).first);
            }
        }
    }
}

TEST_CASE("matrix inverse and determinant") {
    std::mt19937_64 rng(7);
    for (const Gf* Fp : {&field_make(2, 1), &field_make(5, 1), &field_make(3, 2)}) {
        const Gf& F = *Fp;
        for (int t = 0; t < 40; ++t) {
            FMat m = random_invertible(F, 3, rng);
            REQUIRE(m * m.inverse() == FMat::identity(F, 3));
            REQUIRE(m.det() != 0);
        }
        FMat sing(F, 2, 2);
        sing.at(0, 0) = 1;
        sing.at(1, 0) = 1;
        REQUIRE(sing.det() == 0);
        REQUIRE_THROWS_AS(sing.inverse(), std::domain_error);
    }
}

TEST_CASE("enumerate_grassmannian") {
    const Gf& F2 = field_make(2, 1);
    SECTION("counts") {
        REQUIRE(enumerate_grassmannian(3, 1, F2).size() == 7);
        REQUIRE(enumerate_grassmannian(4, 2, F2).size() == 35);
        REQUIRE(enumerate_grassmannian(4, 0, F2).size() == 1);
        REQUIRE(enumerate_grassmannian(4, 0, F2)[0] == Subspace::zero(F2, 4));
    }
    SECTION("representatives are distinct and canonical") {
        auto all = enumerate_grassmannian(4, 2, field_make(3, 1));
        std::set<Subspace> dedup(all.begin(), all.end());
        REQUIRE(dedup.size() == all.size());
        for (const auto& S : all) REQUIRE(echelonize(S.basis_matrix()).first == S);
    }
    SECTION("counts match the brute-force span oracle for n <= 4, q <= 3") {
        for (unsigned q : {2u, 3u}) {
            const Gf& F = field_make(q, 1);
            for (unsigned n = 1; n <= 4; ++n)
                for (unsigned k = 0; k <= n; ++k) {
                    REQUIRE(enumerate_grassmannian(n, k, F).size() ==
                            count_subspaces_brute(n, k, F));
                    REQUIRE(enumerate_grassmannian(n, k, F).size() ==
                            gaussian_binomial(n, k, q));
                }
        }
    }
    SECTION("budget is enforced") {
        Budget tiny;
        tiny.max_grassmannian = 10;
        REQUIRE_THROWS_AS(enumerate_grassmannian(4, 2, F2, tiny), budget_error);
    }
}

TEST_CASE("subspace operations") {
    const Gf& F2 = field_make(2, 1);
    SECTION("meet and join are idempotent") {
        auto pts = enumerate_grassmannian(3, 2, F2);
        for (const auto& A : pts) {
            REQUIRE(join(A, A) == A);
            REQUIRE(meet(A, A) == A);
        }
    }
    SECTION("two distinct points of PG(2,2) join to the unique line through them") {
        auto pts = enumerate_grassmannian(3, 1, F2);
        auto lines = enumerate_grassmannian(3, 2, F2);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Subspace L = join(pts[i], pts[j]);
                REQUIRE(L.dim() == 2);
                unsigned through = 0;
                for (const auto& l : lines)
                    if (subspace_contains(l, pts[i]) && subspace_contains(l, pts[j])) {
                        ++through;
                        REQUIRE(l == L);
                    }
                REQUIRE(through == 1);
            }
    }
    SECTION("modular dimension identity on random pairs") {
        std::mt19937_64 rng(99);
        for (const Gf* Fp : {&field_make(2, 1), &field_make(3, 1)}) {
            const Gf& F = *Fp;
            for (int t = 0; t < 500; ++t) {
                Subspace A = echelonize(random_matrix(F, 4, 1 + rng() % 3, rng)).first;
                Subspace B = echelonize(random_matrix(F, 4, 1 + rng() % 3, rng)).first;
                REQUIRE(join(A, B).dim() + meet(A, B).dim() == A.dim() + B.dim());
                REQUIRE(subspace_contains(join(A, B), A));
                REQUIRE(subspace_contains(A, meet(A, B)));
                REQUIRE(incident(A, join(A, B)));
            }
        }
    }
    SECTION("ambient mismatch is an error") {
        REQUIRE_THROWS_AS(join(Subspace::zero(F2, 3), Subspace::zero(F2, 4)),
                          std::invalid_argument);
    }
}

TEST_CASE("dual_space_map (annihilator)") {
    const Gf& F2 = field_make(2, 1);
    SECTION("Ann(0) is the full dual, Ann of a hyperplane is a point") {
        REQUIRE(dual_space_map(Subspace::zero(F2, 3)) == Subspace::full(F2, 3));
        for (const auto& H : enumerate_grassmannian(4, 3, F2))
            REQUIRE(dual_space_map(H).dim() == 1);
    }
    SECTION("involutive, dimension-complementary, inclusion-reversing on a full flag in GF(2)^4") {
        VSpace V(F2, 4);
        std::vector<Subspace> flag;
        for (unsigned k = 1; k <= 3; ++k) {
            std::vector<std::uint64_t> cols;
            for (unsigned r = 0; r < k; ++r) cols.push_back(V.basis_vector(r));
            flag.push_back(span_of_columns(F2, 4, cols));
        }
        for (unsigned k = 0; k < 3; ++k) {
            REQUIRE(dual_space_map(flag[k]).dim() == 4 - flag[k].dim());
            REQUIRE(dual_space_map(dual_space_map(flag[k])) == flag[k]);
            if (k + 1 < 3)
                REQUIRE(subspace_contains(dual_space_map(flag[k]), dual_space_map(flag[k + 1])));
        }
    }
}

TEST_CASE("enumerate_invertible matches GL orders") {
    Budget b;
    for (auto [n, q, expect] :
         {std::tuple<unsigned, unsigned, std::uint64_t>{2, 2, 6}, {3, 2, 168}, {2, 3, 48}}) {
        const Gf& F = field_make(q, 1);
        std::uint64_t count = 0;
        enumerate_invertible(n, F, b, [&](const FMat& m) {
            ++count;
            REQUIRE(m.det() != 0);
        });
        REQUIRE(count == expect);
        REQUIRE(gl_order(n, q) == expect);
    }
}
