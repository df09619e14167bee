#include "biinterp/gamma.hpp"

#include <algorithm>

namespace biinterp {

int choose_xi(const Subgroup& H) {
    if (H.size() < 2) throw TrivialH();
    return H.members[1];  // members are sorted and start with the identity
}

std::vector<std::optional<int>> GammaCodec::row_shape(int coset, bool unit) const {
    std::vector<std::optional<int>> shape;
    if (mode == GammaMode::Standard) {
        shape.assign(width, std::optional<int>(unit ? xi : 0));
        shape[coset] = unit ? std::optional<int>(0) : std::nullopt;
    } else {
        // Star rows: (h,1,1), (1,h,1), (xi,1,xi), (1,xi,xi).
        if (!unit) {
            shape = {std::optional<int>(0), std::optional<int>(0), std::optional<int>(0)};
            shape[coset] = std::nullopt;
        } else if (coset == 1) {
            shape = {std::optional<int>(xi), std::optional<int>(0), std::optional<int>(xi)};
        } else {
            shape = {std::optional<int>(0), std::optional<int>(xi), std::optional<int>(xi)};
        }
    }
    return shape;
}

GammaCodec build_codec(ExtensionPtr ext, ModePolicy policy) {
    GammaCodec codec;
    codec.ext = std::move(ext);
    codec.xi = choose_xi(codec.ext->H);
    switch (policy) {
        case ModePolicy::Auto:
            codec.mode = codec.ext->m == 2 ? GammaMode::Star : GammaMode::Standard;
            break;
        case ModePolicy::ForceStandard: codec.mode = GammaMode::Standard; break;
        case ModePolicy::ForceStar:
            if (codec.ext->m != 2) throw InvalidMode("star rows exist only for index 2");
            codec.mode = GammaMode::Star;
            break;
    }
    codec.width = codec.mode == GammaMode::Star ? 3 : codec.ext->m;

    const GroupTable& G = *codec.ext->G;
    codec.encode_of.resize(G.order());
    for (int g = 0; g < G.order(); ++g) {
        codec.encode_of[g] = encode(codec, g);
        auto [it, fresh] = codec.decode_of.try_emplace(codec.encode_of[g], g);
        if (!fresh) codec.collisions.emplace_back(it->second, g);
    }
    for (const auto& [tuple, g] : codec.decode_of) codec.tuples.push_back(tuple);
    return codec;
}

std::vector<int> encode(const GammaCodec& codec, int g) {
    const ExtensionData& ext = *codec.ext;
    int i = ext.dec.coset_of[g];
    int h = ext.G->mul(g, ext.G->inv(ext.transversal[i]));
    auto shape = codec.row_shape(i, h == 0);
    std::vector<int> tuple(codec.width);
    for (int s = 0; s < codec.width; ++s) tuple[s] = shape[s] ? *shape[s] : h;
    return tuple;
}

std::optional<RowClass> classify(const GammaCodec& codec, const std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) != codec.width) return std::nullopt;
    int rows = codec.mode == GammaMode::Star ? 2 : codec.ext->m;
    for (bool unit : {false, true})
        for (int i = 0; i < rows; ++i) {
            auto shape = codec.row_shape(i, unit);
            bool ok = true;
            int payload = 0;
            for (int s = 0; s < codec.width && ok; ++s) {
                if (shape[s]) {
                    ok = tuple[s] == *shape[s];
                } else {
                    payload = tuple[s];
                    ok = payload != 0 && codec.ext->H.contains(payload);
                }
            }
            if (ok) return RowClass{i, unit, payload};
        }
    return std::nullopt;
}

namespace {
std::string tuple_str(const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}
}  // namespace

int decode(const GammaCodec& codec, const std::vector<int>& tuple) {
    auto cls = classify(codec, tuple);
    if (!cls) throw NotInGamma(tuple_str(tuple));
    const ExtensionData& ext = *codec.ext;
    int t = ext.transversal[cls->coset];
    return cls->unit ? t : ext.G->mul(cls->payload, t);
}

std::vector<int> gamma_op(const GammaCodec& codec, const std::vector<int>& a,
                          const std::vector<int>& b) {
    auto ca = classify(codec, a);
    if (!ca) throw NotInGamma(tuple_str(a));
    auto cb = classify(codec, b);
    if (!cb) throw NotInGamma(tuple_str(b));
    const ExtensionData& ext = *codec.ext;
    const GroupTable& G = *ext.G;

    // (h t_i)(k t_j) = h * conj_i(k) * c_ij * t_k(i,j); a unit row stands
    // for h = 1 (resp. k = 1).
    int w = 0;
    if (!ca->unit) w = ca->payload;
    if (!cb->unit) w = G.mul(w, ext.conj_apply(ca->coset, cb->payload));
    w = G.mul(w, ext.c[ca->coset][cb->coset]);

    int r = ext.k[ca->coset][cb->coset];
    auto shape = codec.row_shape(r, w == 0);
    std::vector<int> out(codec.width);
    for (int s = 0; s < codec.width; ++s) out[s] = shape[s] ? *shape[s] : w;
    return out;
}

std::vector<int> gamma_op_generic(const GammaCodec& codec, const std::vector<int>& a,
                                  const std::vector<int>& b) {
    return encode(codec, codec.ext->G->mul(decode(codec, a), decode(codec, b)));
}

nlohmann::ordered_json codec_to_json(const GammaCodec& codec) {
    nlohmann::ordered_json j;
    j["mode"] = codec.mode == GammaMode::Star ? "star" : "standard";
    j["xi"] = codec.xi;
    j["width"] = codec.width;
    j["tuples"] = codec.tuples;
    if (!codec.bijective()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [g1, g2] : codec.collisions) {
            nlohmann::ordered_json e;
            e["g1"] = g1;
            e["g2"] = g2;
            e["tuple"] = codec.encode_of[g1];
            arr.push_back(std::move(e));
        }
        j["collisions"] = std::move(arr);
    }
    return j;
}

}  // namespace biinterp
