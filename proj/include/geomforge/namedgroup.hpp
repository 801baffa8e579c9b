#pragma once

#include "geomforge/budget.hpp"
#include "geomforge/classical.hpp"
#include "geomforge/permgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geomforge {

/// A group named on the CLI. perm is the canonical permutation model
/// (projective groups act on points, sym/alt on their letters, isometry
/// groups on isotropic points); matrix_order is carried when the underlying
/// matrix group is the named object (gl/sl/el and the isometry families).
struct NamedGroup {
    PermGroup perm;
    std::optional<std::uint64_t> matrix_order;
    std::string description;
    std::uint64_t order() const { return matrix_order ? *matrix_order : perm.order(); }
};

namespace detail {

inline PermGroup sym_group(unsigned n) {
    std::vector<Perm> gens;
    if (n >= 2) {
        Perm t = Perm::identity(n);
        std::swap(t.img[0], t.img[1]);
        gens.push_back(t);
    }
    if (n >= 3) {
        Perm c = Perm::identity(n);
        for (unsigned i = 0; i < n; ++i) c.img[i] = (i + 1) % n;
        gens.push_back(c);
    }
    return PermGroup(n, gens);
}

inline PermGroup alt_group(unsigned n) {
    std::vector<Perm> gens;
    for (unsigned i = 0; i + 2 < n; ++i) {
        Perm c = Perm::identity(n);
        c.img[i] = i + 1;
        c.img[i + 1] = i + 2;
        c.img[i + 2] = i;
        gens.push_back(c);
    }
    if (gens.empty()) gens.push_back(Perm::identity(n));
    return PermGroup(n, gens);
}

inline const Gf& field_of_order(unsigned q) {
    unsigned p = 2;
    while (p <= q && q % p) ++p;
    unsigned k = 0, t = q;
    while (t > 1 && t % p == 0) {
        t /= p;
        ++k;
    }
    if (t != 1 || k == 0) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return field_make(p, k);
}

inline PseudoQuadraticForm standard_symplectic(const Gf& F, unsigned dim) {
    if (dim % 2) throw std::invalid_argument("symplectic groups need even dimension");
    FMat G(F, dim, dim);
    for (unsigned i = 0; i < dim / 2; ++i) G.at(2 * i, 2 * i + 1) = 1;
    FormParameter par(FieldAuto::identity(F), F.minus_one(), LambdaTag::Full);
    return PseudoQuadraticForm(SesquilinearForm(FieldAuto::identity(F), G), par);
}

inline PseudoQuadraticForm standard_orthogonal(const Gf& F, unsigned dim) {
    FMat G(F, dim, dim);
    if (F.p() == 2) {
        // hyperbolic pairs plus x_n^2 on an odd leftover coordinate
        for (unsigned i = 0; i + 1 < dim; i += 2) G.at(i, i + 1) = 1;
        if (dim % 2) G.at(dim - 1, dim - 1) = 1;
    } else {
        for (unsigned i = 0; i < dim; ++i) G.at(i, i) = 1;
    }
    FormParameter par(FieldAuto::identity(F), 1, LambdaTag::Zero);
    return PseudoQuadraticForm(SesquilinearForm(FieldAuto::identity(F), G), par);
}

inline PseudoQuadraticForm standard_unitary(const Gf& Fq2, unsigned dim) {
    if (Fq2.k() % 2) throw std::invalid_argument("unitary groups need GF(q^2) coefficients");
    FieldAuto sigma(Fq2, Fq2.k() / 2); // x -> x^q
    FormParameter par(sigma, 1, LambdaTag::FixedSet);
    return PseudoQuadraticForm(SesquilinearForm(sigma, FMat::identity(Fq2, dim)), par);
}

} // namespace detail

/// Grammar "name(params)": sym(n), alt(n), psl(n,q), pgl(n,q), pel(n,q),
/// el(n,q), sl(n,q), gl(n,q), sp(n,q), o(n,q), u(n,q). psl = pel is the
/// point image of EL; el/sl/gl are faithful on nonzero vectors; sp/o/u build
/// the isometry group of the standard form of the family and act on its
/// isotropic points.
inline NamedGroup parse_named_group(const std::string& spec,
                                    const Budget& budget = Budget::defaults()) {
    auto open = spec.find('(');
    if (open == std::string::npos || spec.back() != ')')
        throw std::invalid_argument("group spec must look like name(args): " + spec);
    std::string name = spec.substr(0, open);
    std::string args = spec.substr(open + 1, spec.size() - open - 2);
    std::vector<unsigned> a;
    std::size_t pos = 0;
    while (pos < args.size()) {
        auto comma = args.find(',', pos);
        if (comma == std::string::npos) comma = args.size();
        a.push_back(static_cast<unsigned>(std::stoul(args.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    auto want = [&](std::size_t k) {
        if (a.size() != k)
            throw std::invalid_argument(name + " expects " + std::to_string(k) + " argument(s)");
    };
    NamedGroup out;
    if (name == "sym") {
        want(1);
        out.perm = detail::sym_group(a[0]);
        out.description = "symmetric group on " + std::to_string(a[0]) + " letters";
    } else if (name == "alt") {
        want(1);
        out.perm = detail::alt_group(a[0]);
        out.description = "alternating group on " + std::to_string(a[0]) + " letters";
    } else if (name == "psl" || name == "pel") {
        want(2);
        out.perm = build_el(a[0], detail::field_of_order(a[1]), budget).on_points;
        out.description = "little projective group on the points of PG(" +
                          std::to_string(a[0] - 1) + "," + std::to_string(a[1]) + ")";
    } else if (name == "pgl") {
        want(2);
        out.perm = build_gl(a[0], detail::field_of_order(a[1]), budget).on_points;
        out.description = "projective linear group on the points of PG(" +
                          std::to_string(a[0] - 1) + "," + std::to_string(a[1]) + ")";
    } else if (name == "el" || name == "sl") {
        want(2);
        auto lg = build_el(a[0], detail::field_of_order(a[1]), budget);
        out.matrix_order = lg.on_vectors.order();
        out.perm = lg.on_vectors;
        out.description = "elementary (= special) linear group on nonzero vectors";
    } else if (name == "gl") {
        want(2);
        auto lg = build_gl(a[0], detail::field_of_order(a[1]), budget);
        out.matrix_order = lg.on_vectors.order();
        out.perm = lg.on_vectors;
        out.description = "general linear group on nonzero vectors";
    } else if (name == "sp" || name == "o" || name == "u") {
        want(2);
        const Gf& F = (name == "u") ? field_make(detail::field_of_order(a[1]).p(),
                                                 detail::field_of_order(a[1]).k() * 2)
                                    : detail::field_of_order(a[1]);
        PseudoQuadraticForm pq = (name == "sp")  ? detail::standard_symplectic(F, a[0])
                                 : (name == "o") ? detail::standard_orthogonal(F, a[0])
                                                 : detail::standard_unitary(F, a[0]);
        auto U = build_unitary(pq, budget);
        out.matrix_order = U.elements.size();
        out.perm = U.on_isotropic_points;
        out.description = "isometry group of the standard " +
                          std::string(name == "sp"  ? "symplectic"
                                      : name == "o" ? "orthogonal"
                                                    : "hermitian") +
                          " form, acting on its isotropic points";
    } else {
        throw std::invalid_argument("unknown group family: " + name);
    }
    return out;
}

} // namespace geomforge
