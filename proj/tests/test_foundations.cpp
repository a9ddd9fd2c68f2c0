#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "b32/cyclo.hpp"
#include "b32/gf2.hpp"
#include "b32/gfq.hpp"
#include "b32/group.hpp"
#include "b32/intmat.hpp"
#include "b32/util.hpp"

using namespace b32;

TEST_CASE("kernel of [1 1]") {
    IntMat a = IntMat::from({{1}, {1}});  // column vector: left kernel of 2x1
    IntMat k = left_kernel_basis(a);
    REQUIRE(k.rows() == 1);
    CHECK(((k.at(0, 0) == 1 && k.at(0, 1) == -1) || (k.at(0, 0) == -1 && k.at(0, 1) == 1)));
}

TEST_CASE("snf of A4 cartan is 1,1,4") {
    IntMat c = IntMat::from({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    auto d = elementary_divisors(c);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 1);
    CHECK(d[1] == 1);
    CHECK(d[2] == 4);
    CHECK(det(c) == 4);
    CHECK(is_positive_definite(c));
}

TEST_CASE("snf of identity is all ones") {
    auto d = elementary_divisors(IntMat::identity(5));
    for (auto& x : d) CHECK(x == 1);
    CHECK(d.size() == 5);
}

TEST_CASE("kernel basis is saturated and annihilates") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat a(4, 3);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = (long)(rng.below(7)) - 3;
        IntMat k = left_kernel_basis(a);
        if (k.rows() == 0) continue;
        IntMat z = k.mul(a);
        CHECK(z.is_zero());
        // saturation: elementary divisors of the basis matrix are all 1
        for (auto& d : elementary_divisors(k)) CHECK(d == 1);
    }
}

TEST_CASE("cyclotomic basics") {
    Cyclo z3 = Cyclo::root(3, 1);
    Cyclo s = z3 + Cyclo::root(3, 2);
    CHECK(s.is_rational());
    CHECK(s.rational() == -1);

    Cyclo z7 = Cyclo::root(7, 1);
    CHECK(z7.conj() == Cyclo::root(7, 6));

    Cyclo z8 = Cyclo::root(8, 1);
    Cyclo i = z8 * z8;
    CHECK(i.conductor() == 4);
    CHECK(i == Cyclo::root(4, 1));

    // 1 + zeta5 + ... + zeta5^4 = 0
    Cyclo t = Cyclo(1);
    for (int e = 1; e < 5; ++e) t += Cyclo::root(5, e);
    CHECK(t.is_zero());

    // ring laws on random sparse values
    Rng rng(3);
    auto rnd = [&]() {
        Cyclo v;
        for (int j = 0; j < 3; ++j)
            v += Cyclo::root(12, (std::int64_t)rng.below(12)).scaled(mpz_class((long)rng.below(5)) - 2);
        return v;
    };
    for (int trial = 0; trial < 25; ++trial) {
        Cyclo a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("cyclotomic conductor reduction and traces") {
    // zeta6 = -zeta3^2 has conductor 3
    Cyclo z6 = Cyclo::root(6, 1);
    CHECK(z6.conductor() == 3);
    CHECK(Cyclo::root(4, 2) == Cyclo(-1));
    CHECK(Cyclo::root(12, 1).trace_to_q() == Cyclo::root(12, 1).conj().trace_to_q());
    CHECK(Cyclo(5).trace_to_q() == 5);
}

TEST_CASE("coordinates flatten exactly") {
    Cyclo v = Cyclo::root(7, 3).scaled(2) - Cyclo::root(7, 1);
    auto coords = v.coordinates(7);
    REQUIRE(coords.size() == 6);
    Cyclo back;
    const auto& basis = Cyclo::basis_exponents(7);
    for (std::size_t i = 0; i < coords.size(); ++i)
        back += Cyclo::root(7, basis[i]).scaled(coords[i]);
    CHECK(back == v);
}

TEST_CASE("mod-2 reduction is a ring hom") {
    Mod2Reducer red(7);  // F_8
    CHECK(red.field().degree() == 3);
    auto g = red.reduce(Cyclo::root(7, 1));
    CHECK(red.field().has_order(g, 7));
    // zeta4 -> 1
    Mod2Reducer red4(1);
    CHECK(red4.reduce(Cyclo::root(4, 1)) == red4.field().one());

    Rng rng(11);
    Mod2Reducer r21(21);
    auto rnd = [&]() {
        Cyclo v;
        for (int j = 0; j < 3; ++j)
            v += Cyclo::root(21, (std::int64_t)rng.below(21)).scaled(mpz_class((long)rng.below(9)) - 4);
        return v;
    };
    for (int t = 0; t < 20; ++t) {
        Cyclo a = rnd(), b = rnd();
        CHECK(r21.reduce(a * b) == r21.field().mul(r21.reduce(a), r21.reduce(b)));
        CHECK(r21.reduce(a + b) == r21.field().add(r21.reduce(a), r21.reduce(b)));
    }
}

TEST_CASE("gf2 matrices") {
    auto polys3 = irreducible_polys_gf2(3);
    REQUIRE(polys3.size() == 2);  // x^3+x+1, x^3+x^2+1
    Gf2Mat m7 = companion(polys3[0], 3);
    CHECK(m7.order() == 7);
    CHECK(charpoly_gf2(m7) == polys3[0]);
    Gf2Mat inv;
    REQUIRE(m7.invert(inv));
    CHECK(m7.mul(inv) == Gf2Mat::identity(3));
}

TEST_CASE("closure of a transposition has order 2") {
    auto g = FiniteGroup::from_perms({{1, 0}});
    CHECK(g->order() == 2);
}

TEST_CASE("A4 from standard generators") {
    // (12)(34), (123)
    auto g = FiniteGroup::from_perms({{1, 0, 3, 2}, {1, 2, 0, 3}});
    CHECK(g->order() == 12);
    auto cd = conjugacy_data(*g);
    REQUIRE(cd.num_classes() == 4);
    std::vector<std::int64_t> sizes(cd.size);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::int64_t>{1, 3, 4, 4});
}

TEST_CASE("SL2(8) closure has order 504 and 9 classes") {
    // 2x2 over F_8 as 6x6 over F_2; F_8 = F_2[t]/(t^3+t+1)
    // generators: [[1,1],[0,1]], [[t,0],[0,t^-1]], [[0,1],[1,0]]
    Gf2Mat t_mul = companion(0b1011, 3);  // mult by t
    Gf2Mat t_inv;
    REQUIRE(t_mul.invert(t_inv));
    Gf2Mat id3 = Gf2Mat::identity(3);
    auto embed = [&](const Gf2Mat& a, const Gf2Mat& b, const Gf2Mat& c, const Gf2Mat& d) {
        Gf2Mat m;
        m.d = 6;
        for (int i = 0; i < 3; ++i)
            m.row[i] = (std::uint16_t)(a.row[i] | (b.row[i] << 3));
        for (int i = 0; i < 3; ++i)
            m.row[3 + i] = (std::uint16_t)(c.row[i] | (d.row[i] << 3));
        return m;
    };
    Gf2Mat zero;
    zero.d = 3;
    Gf2Mat u = embed(id3, id3, zero, id3);
    Gf2Mat tt = embed(t_mul, zero, zero, t_inv);
    Gf2Mat w = embed(zero, id3, id3, zero);
    auto g = FiniteGroup::from_gf2({u, tt, w}, 600, "sl2_8");
    CHECK(g->order() == 504);
    auto cd = conjugacy_data(*g);
    CHECK(cd.num_classes() == 9);
}

TEST_CASE("compose and quotient") {
    auto a4 = FiniteGroup::from_perms({{1, 0, 3, 2}, {1, 2, 0, 3}});
    auto c2 = FiniteGroup::from_perms({{1, 0}});
    auto d = compose_direct(a4, c2);
    CHECK(d->order() == 24);

    // central product C4 * C4 over the shared C2 has order 8
    auto c4 = FiniteGroup::from_perms({{1, 2, 3, 0}});
    std::vector<std::uint16_t> sq{2, 3, 0, 1};
    auto i4 = c4->index_of(sq.data());
    auto cp = compose_central(c4, c4, {{i4, i4}});
    CHECK(cp->order() == 8);

    // (C2)^5 / <one involution> has order 16
    std::vector<std::vector<std::uint16_t>> gens5;
    for (int i = 0; i < 5; ++i) {
        std::vector<std::uint16_t> t(32);
        for (int v = 0; v < 32; ++v) t[v] = (std::uint16_t)(v ^ (1 << i));
        gens5.push_back(t);
    }
    auto e32 = FiniteGroup::from_perms(gens5);
    CHECK(e32->order() == 32);
    auto q = quotient_group(e32, {e32->generator_indices()[0]});
    CHECK(q.group->order() == 16);

    // quotient by the whole group / trivial subgroup
    CHECK(quotient_group(e32, {e32->generator_indices().begin(), e32->generator_indices().end()})
              .group->order() == 1);
    auto qq = quotient_group(e32, {e32->identity_index()});
    CHECK(qq.group->order() == 32);
    CHECK(iso_test_small(*qq.group, *e32));
}

TEST_CASE("affine group D x C31 has order 992") {
    // Singer cycle: companion of x^5+x^2+1
    Gf2Mat singer = companion(0b100101, 5);
    CHECK(singer.order() == 31);
    auto g = affine_group({singer}, 5, "d_c31");
    CHECK(g->order() == 992);
    auto cd = conjugacy_data(*g);
    CHECK(cd.num_classes() == 32);
}

TEST_CASE("iso fingerprints separate extraspecial 3-groups") {
    // 3_+^{1+2}: Heisenberg over F_3, exponent 3, on 9 affine points
    // (u,v) -> (u + xv + z, v + y)
    auto pt = [](int u, int v) { return (std::uint16_t)(3 * u + v); };
    std::vector<std::uint16_t> a(9), b(9), zc(9);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) {
            a[pt(u, v)] = pt((u + v) % 3, v);        // x=1,y=0,z=0
            b[pt(u, v)] = pt(u, (v + 1) % 3);        // y=1
            zc[pt(u, v)] = pt((u + 1) % 3, v);       // z=1
        }
    auto heis = FiniteGroup::from_perms({a, b});
    CHECK(heis->order() == 27);
    CHECK(heis->exponent() == 3);
    CHECK(!heis->is_abelian());

    // 3_-^{1+2} = C9 |x C3 has exponent 9
    std::vector<std::uint16_t> c9(9), act(9);
    for (int i = 0; i < 9; ++i) c9[i] = (std::uint16_t)((i + 1) % 9);
    for (int i = 0; i < 9; ++i) act[i] = (std::uint16_t)(i * 4 % 9);  // x -> x^4, order 3 on C9
    auto c3pts = FiniteGroup::from_perms({{1, 2, 0}});
    auto c9grp = FiniteGroup::from_perms({c9});
    auto m3 = compose_semidirect(c9grp, c3pts, {act});
    CHECK(m3->order() == 27);
    CHECK(m3->exponent() == 9);
    CHECK(!(iso_fingerprint(*heis) == iso_fingerprint(*m3)));
    CHECK(!iso_test_small(*heis, *m3));
    CHECK(iso_test_small(*heis, *heis));
}

TEST_CASE("matrix to permutation conversion is a homomorphism") {
    Gf2Mat singer = companion(0b100101, 5);
    auto mg = FiniteGroup::from_gf2({singer});
    auto pg = mg->as_permutation();
    CHECK(pg->order() == mg->order());
    CHECK(pg->degree() == 31);
}
