#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "b32/chartab.hpp"
#include "b32/util.hpp"

using namespace b32;

namespace {

GroupPtr a4_group() { return FiniteGroup::from_perms({{1, 0, 3, 2}, {1, 2, 0, 3}}, 20, "A4"); }
GroupPtr a5_group() { return FiniteGroup::from_perms({{1, 2, 3, 4, 0}, {0, 1, 3, 4, 2}}, 100, "A5"); }
GroupPtr s3_group() { return FiniteGroup::from_perms({{1, 0, 2}, {1, 2, 0}}, 10, "S3"); }

std::vector<long> degree_list(const CharacterTable& t) {
    std::vector<long> d;
    for (int i = 0; i < t.num_chars(); ++i) d.push_back(t.degree(i).get_si());
    return d;
}

}  // namespace

TEST_CASE("S3 character table") {
    auto t = character_table(s3_group());
    CHECK(degree_list(t) == std::vector<long>{1, 1, 2});
}

TEST_CASE("A4 character table and its 2-block") {
    auto g = a4_group();
    auto t = character_table(g);
    CHECK(degree_list(t) == std::vector<long>{1, 1, 1, 3});
    auto bp = blocks_2(t);
    REQUIRE(bp.blocks.size() == 1);
    CHECK(bp.blocks[0].defect == 2);
    CHECK(bp.blocks[0].k == 4);

    auto cd = conjugacy_data(*g);
    decomposition_normal_sylow(g, cd, t, bp);
    auto& b = bp.blocks[0];
    REQUIRE(b.l == 3);
    // rows: degrees 1,1,1,3; the degree-3 row is (1,1,1)
    IntMat expect_cartan = IntMat::from({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    CHECK(b.cartan == expect_cartan);
    mpz_class s3 = 0;
    for (std::size_t j = 0; j < 3; ++j) s3 += b.dmat.at(3, j);
    CHECK(s3 == 3);  // 3 = 1+1+1
    auto divs = elementary_divisors(b.cartan);
    CHECK(divs.back() == 4);
}

TEST_CASE("A5 blocks: principal of defect 2 plus defect-0 Steinberg") {
    auto t = character_table(a5_group());
    CHECK(degree_list(t) == std::vector<long>{1, 3, 3, 4, 5});
    auto bp = blocks_2(t);
    REQUIRE(bp.blocks.size() == 2);
    const BlockData* pr = &bp.blocks[bp.principal_block];
    CHECK(pr->k == 4);
    CHECK(pr->defect == 2);
    std::vector<long> pdeg;
    for (int s : pr->chars) pdeg.push_back(t.degree(s).get_si());
    std::sort(pdeg.begin(), pdeg.end());
    CHECK(pdeg == std::vector<long>{1, 3, 3, 5});
    for (auto& b : bp.blocks)
        if (b.id != bp.principal_block) {
            CHECK(b.k == 1);
            CHECK(b.defect == 0);
        }
}

TEST_CASE("odd order group: every character alone in a defect-0 block") {
    auto c7 = FiniteGroup::from_perms({{1, 2, 3, 4, 5, 6, 0}}, 10, "C7");
    auto t = character_table(c7);
    auto bp = blocks_2(t);
    CHECK(bp.blocks.size() == 7);
    for (auto& b : bp.blocks) CHECK(b.defect == 0);
}

TEST_CASE("D x C31 local model: degrees, decomposition, cartan") {
    Gf2Mat singer = companion(0b100101, 5);
    auto g = affine_group({singer}, 5, "D:C31");
    auto cd = conjugacy_data(*g);
    auto t = character_table(*g, cd, "D:C31");
    auto d = degree_list(t);
    CHECK(std::count(d.begin(), d.end(), 1) == 31);
    CHECK(std::count(d.begin(), d.end(), 31) == 1);
    auto bp = blocks_2(t);
    REQUIRE(bp.blocks.size() == 1);
    CHECK(bp.blocks[0].k == 32);
    decomposition_normal_sylow(g, cd, t, bp);
    auto& b = bp.blocks[0];
    CHECK(b.l == 31);
    // Cartan = I + J on 31 simples
    for (std::size_t i = 0; i < 31; ++i)
        for (std::size_t j = 0; j < 31; ++j)
            CHECK(b.cartan.at(i, j) == (i == j ? 2 : 1));
    auto divs = elementary_divisors(b.cartan);
    CHECK(divs.back() == 32);
    for (std::size_t i = 0; i + 1 < divs.size(); ++i) CHECK(divs[i] == 1);
}

TEST_CASE("elementary abelian (C2)^5: single block, one simple") {
    std::vector<std::vector<std::uint16_t>> gens;
    for (int i = 0; i < 5; ++i) {
        std::vector<std::uint16_t> p(32);
        for (int v = 0; v < 32; ++v) p[v] = (std::uint16_t)(v ^ (1 << i));
        gens.push_back(p);
    }
    auto g = FiniteGroup::from_perms(gens, 50, "C2^5");
    auto cd = conjugacy_data(*g);
    auto t = character_table(*g, cd, "C2^5");
    auto bp = blocks_2(t);
    REQUIRE(bp.blocks.size() == 1);
    decomposition_normal_sylow(g, cd, t, bp);
    CHECK(bp.blocks[0].l == 1);
    REQUIRE(bp.blocks[0].dmat.cols() == 1);
    for (std::size_t i = 0; i < 32; ++i) CHECK(bp.blocks[0].dmat.at(i, 0) == 1);
    CHECK(bp.blocks[0].cartan.at(0, 0) == 32);
}

TEST_CASE("table product: A4 x C2 and orthogonality preserved") {
    auto ta = std::make_shared<CharacterTable>(character_table(a4_group()));
    auto tc2 = std::make_shared<CharacterTable>(
        character_table(FiniteGroup::from_perms({{1, 0}}, 4, "C2")));
    auto prod = table_product(ta, tc2);
    CHECK(prod.num_chars() == 8);
    prod.validate();

    auto ta5 = std::make_shared<CharacterTable>(character_table(a5_group()));
    auto p55 = table_product(ta5, ta5);
    CHECK(p55.num_chars() == 25);
    p55.validate();
    // degree multiset = pairwise products
    std::vector<long> dd = degree_list(p55);
    std::sort(dd.begin(), dd.end());
    std::vector<long> expect;
    for (long x : {1, 3, 3, 4, 5})
        for (long y : {1, 3, 3, 4, 5}) expect.push_back(x * y);
    std::sort(expect.begin(), expect.end());
    CHECK(dd == expect);
}

TEST_CASE("composed block dmat via kronecker matches direct computation") {
    auto a4 = a4_group();
    auto c2 = FiniteGroup::from_perms({{1, 0}}, 4, "C2");
    auto ta = std::make_shared<CharacterTable>(character_table(a4));
    auto tc = std::make_shared<CharacterTable>(character_table(c2));
    auto prod = table_product(ta, tc);
    auto bp_prod = blocks_2(prod);
    REQUIRE(bp_prod.blocks.size() == 1);

    auto bpa = blocks_2(*ta);
    auto cda = conjugacy_data(*a4);
    decomposition_normal_sylow(a4, cda, *ta, bpa);
    auto bpc = blocks_2(*tc);
    auto cdc = conjugacy_data(*c2);
    decomposition_normal_sylow(c2, cdc, *tc, bpc);
    compose_block_dmat(prod, bpa.blocks[0], bpc.blocks[0], bp_prod);
    CHECK(bp_prod.blocks[0].l == 3);

    // direct route: A4 x C2 as a group
    auto g = compose_direct(a4, c2, "A4xC2");
    auto cd = conjugacy_data(*g);
    auto t2 = character_table(*g, cd, "A4xC2");
    auto bp2 = blocks_2(t2);
    decomposition_normal_sylow(g, cd, t2, bp2);
    REQUIRE(bp2.blocks.size() == 1);
    auto ed1 = elementary_divisors(bp_prod.blocks[0].cartan);
    auto ed2 = elementary_divisors(bp2.blocks[0].cartan);
    CHECK(ed1 == ed2);
}

TEST_CASE("table json roundtrip") {
    auto t = character_table(a4_group());
    auto bp = blocks_2(t);
    std::string js = table_to_json(t, &bp);
    CharacterTable t2 = table_from_json(js);
    t2.validate();
    CHECK(t2.group_order == 12);
    CHECK(table_to_json(t2, nullptr) == table_to_json(t2, nullptr));
    // perturbing one value breaks orthogonality and validation says where
    t2.irr[3][1] = t2.irr[3][1] + Cyclo(1);
    bool threw = false;
    try {
        t2.validate();
    } catch (const computation_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("orthogonality") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("ingested A5 principal block dmat validates") {
    auto g = a5_group();
    auto t = character_table(g);
    auto bp = blocks_2(t);
    auto& b = bp.blocks[bp.principal_block];
    // classical data: rows ordered by degree 1,3,3,5
    IntMat dm = IntMat::from({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}});
    // columns have dims 1,2,2
    IntMat cartan = cartan_from_decomposition(dm);
    IntMat expect = IntMat::from({{4, 2, 2}, {2, 2, 1}, {2, 1, 2}});
    CHECK(cartan == expect);
    // degree consistency 1=1, 3=1+2, 3=1+2, 5=1+2+2
    std::vector<long> dims{1, 2, 2};
    for (std::size_t i = 0; i < 4; ++i) {
        long lhs = t.degree(b.chars[i]).get_si();
        long rhs = 0;
        for (std::size_t j = 0; j < 3; ++j) rhs += dm.at(i, j).get_si() * dims[j];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("class mult from table agrees with group computation on S3") {
    auto g = s3_group();
    auto cd = conjugacy_data(*g);
    auto t = character_table(*g, cd, "S3");
    auto cm1 = class_mult_from_group(*g, cd, t);
    auto cm2 = class_mult_from_table(t);
    CHECK(cm1.a == cm2.a);
}
