#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biinterp/gamma.hpp"

using namespace biinterp;

namespace {
GammaCodec codec_for(const GroupPtr& G, const std::vector<int>& members,
                     ModePolicy policy = ModePolicy::Auto) {
    return build_codec(extension_data(G, make_subgroup(G, members)), policy);
}
}  // namespace

TEST_CASE("choose_xi picks the smallest non-identity member") {
    auto C4 = cyclic(4);
    CHECK(choose_xi(make_subgroup(C4, {0, 2})) == 2);
    auto S3 = dihedral(3);
    CHECK(choose_xi(make_subgroup(S3, {0, 1, 2})) == 1);
    CHECK_THROWS_AS(choose_xi(make_subgroup(S3, {0})), TrivialH);
}

TEST_CASE("codec modes and sizes") {
    auto q8 = codec_for(quaternion8(), {0, 1});
    CHECK(q8.mode == GammaMode::Standard);
    CHECK(q8.width == 4);
    CHECK(q8.tuples.size() == 8);
    CHECK(q8.bijective());

    auto s3 = codec_for(dihedral(3), {0, 1, 2});
    CHECK(s3.mode == GammaMode::Star);
    CHECK(s3.width == 3);
    CHECK(s3.tuples.size() == 6);
    CHECK(s3.bijective());

    CHECK_THROWS_AS(codec_for(quaternion8(), {0, 1}, ModePolicy::ForceStar), InvalidMode);
}

TEST_CASE("the standard encoding collides at index 2, exactly as expected") {
    auto c4 = codec_for(cyclic(4), {0, 2}, ModePolicy::ForceStandard);
    CHECK_FALSE(c4.bijective());
    // encode(xi) = (xi, 1) = encode(t_2)
    CHECK(c4.xi == 2);
    int t2 = c4.ext->transversal[1];
    CHECK(encode(c4, c4.xi) == encode(c4, t2));
    CHECK(encode(c4, c4.xi) == std::vector<int>{2, 0});
    bool found = false;
    for (auto [a, b] : c4.collisions)
        found = found || (std::minmax(a, b) == std::minmax(c4.xi, t2));
    CHECK(found);

    // the star repair is a bijection on the same instance
    CHECK(codec_for(cyclic(4), {0, 2}, ModePolicy::ForceStar).bijective());
    CHECK(codec_for(cyclic(4), {0, 2}).mode == GammaMode::Star);
}

TEST_CASE("encoding values in Q8: unit rows carry the marker") {
    auto q8 = codec_for(quaternion8(), {0, 1});
    CHECK(q8.xi == 1);  // -1
    // i = t_2 encodes with 1 in slot 2 and -1 elsewhere
    CHECK(encode(q8, 2) == std::vector<int>{1, 0, 1, 1});
    // -i = (-1) * t_2 carries the payload -1 in slot 2
    CHECK(encode(q8, 3) == std::vector<int>{0, 1, 0, 0});
    CHECK(decode(q8, {1, 0, 1, 1}) == 2);
    CHECK(decode(q8, {0, 1, 0, 0}) == 3);
}

TEST_CASE("star encoding values in S3") {
    auto s3 = codec_for(dihedral(3), {0, 1, 2});
    CHECK(s3.xi == 1);  // r
    CHECK(encode(s3, 0) == std::vector<int>{0, 1, 1});  // (1, xi, xi)
    CHECK(encode(s3, 3) == std::vector<int>{1, 0, 1});  // (xi, 1, xi)
    CHECK(encode(s3, 1) == std::vector<int>{1, 0, 0});  // r itself: payload row
    CHECK(encode(s3, 4) == std::vector<int>{0, 2, 0});  // s*r = r^2 * t_2: payload row
    CHECK(decode(s3, {0, 1, 1}) == 0);
    CHECK(decode(s3, {1, 0, 1}) == 3);
}

TEST_CASE("tuples off the image raise NotInGamma") {
    auto q8 = codec_for(quaternion8(), {0, 1});
    CHECK_THROWS_AS(decode(q8, {0, 0, 0, 0}), NotInGamma);
    CHECK_THROWS_AS(decode(q8, {1, 1, 1, 1}), NotInGamma);
    CHECK_THROWS_AS(decode(q8, {0, 0}), NotInGamma);
    CHECK_THROWS_AS(gamma_op(q8, {0, 0, 0, 0}, encode(q8, 1)), NotInGamma);

    auto s3 = codec_for(dihedral(3), {0, 1, 2});
    CHECK_THROWS_AS(decode(s3, {2, 2, 2}), NotInGamma);
    CHECK_THROWS_AS(decode(s3, {0, 0, 0}), NotInGamma);
    // a payload outside H is not a row either
    CHECK_THROWS_AS(decode(s3, {3, 0, 0}), NotInGamma);
}

TEST_CASE("case formulas on Q8 match the worked products") {
    auto q8 = codec_for(quaternion8(), {0, 1});
    // i * i: both unit rows of coset 2, c_22 = -1, lands in coset 1
    CHECK(gamma_op(q8, encode(q8, 2), encode(q8, 2)) == std::vector<int>{1, 0, 0, 0});
    CHECK(gamma_op(q8, encode(q8, 2), encode(q8, 2)) == encode(q8, 1));
    // i * (-1): unit row times payload row of coset 1
    CHECK(gamma_op(q8, encode(q8, 2), encode(q8, 1)) == std::vector<int>{0, 1, 0, 0});
    CHECK(gamma_op(q8, encode(q8, 2), encode(q8, 1)) == encode(q8, 3));
}

TEST_CASE("encode is an isomorphism and both operation paths agree") {
    auto D4 = dihedral(4);
    auto E8 = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2));
    std::vector<GammaCodec> codecs;
    codecs.push_back(codec_for(quaternion8(), {0, 1}));
    codecs.push_back(codec_for(dihedral(3), {0, 1, 2}));
    codecs.push_back(codec_for(cyclic(6), {0, 2, 4}));
    codecs.push_back(codec_for(D4, {0, 1, 2, 3}));
    codecs.push_back(codec_for(E8, {0, 2, 4, 6}));
    for (const auto& codec : codecs) {
        const GroupTable& G = *codec.ext->G;
        for (int g = 0; g < G.order(); ++g) CHECK(decode(codec, encode(codec, g)) == g);
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b) {
                auto want = encode(codec, G.mul(a, b));
                CHECK(gamma_op(codec, encode(codec, a), encode(codec, b)) == want);
                CHECK(gamma_op_generic(codec, encode(codec, a), encode(codec, b)) == want);
            }
    }
}

TEST_CASE("multiplying by the encoded identity is the identity") {
    for (auto codec : {codec_for(quaternion8(), {0, 1}), codec_for(dihedral(3), {0, 1, 2})}) {
        auto e = encode(codec, 0);
        for (const auto& x : codec.tuples) {
            CHECK(gamma_op(codec, x, e) == x);
            CHECK(gamma_op(codec, e, x) == x);
        }
    }
}

TEST_CASE("codec serialization") {
    auto s3 = codec_for(dihedral(3), {0, 1, 2});
    auto j = codec_to_json(s3);
    CHECK(j["mode"] == "star");
    CHECK(j["xi"] == 1);
    CHECK(j["width"] == 3);
    CHECK(j["tuples"].size() == 6);
    CHECK_FALSE(j.contains("collisions"));

    auto c4 = codec_for(cyclic(4), {0, 2}, ModePolicy::ForceStandard);
    auto jc = codec_to_json(c4);
    CHECK(jc["mode"] == "standard");
    CHECK(jc["collisions"].size() == 2);
}
