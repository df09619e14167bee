#include "biinterp/extension.hpp"

namespace biinterp {

ExtensionPtr extension_data(const GroupPtr& G, const Subgroup& H) {
    if (H.size() < 2) throw TrivialH();
    if (!is_normal(H)) throw NotNormal();

    auto ext = std::make_shared<ExtensionData>();
    ext->G = G;
    ext->H = H;
    ext->dec = coset_decomposition(H);
    ext->m = ext->dec.index();
    if (ext->m < 2) throw TrivialIndex();
    ext->transversal = canonical_transversal(ext->dec);

    const int m = ext->m;
    ext->c.assign(m, std::vector<int>(m));
    ext->k.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int p = G->mul(ext->transversal[i], ext->transversal[j]);
            int kk = ext->dec.coset_of[p];
            ext->k[i][j] = kk;
            ext->c[i][j] = G->mul(p, G->inv(ext->transversal[kk]));
        }

    ext->conj.assign(m, std::vector<int>(H.size()));
    for (int i = 0; i < m; ++i) {
        int t = ext->transversal[i];
        for (int a = 0; a < H.size(); ++a)
            ext->conj[i][a] = G->mul(G->mul(t, H.members[a]), G->inv(t));
    }
    return ext;
}

VerificationReport verify_extension_identities(const ExtensionData& ext) {
    const GroupTable& G = *ext.G;
    const Subgroup& H = ext.H;
    const int m = ext.m;
    VerificationReport rep;
    rep.instance = "extension-identities";

    // Indices in counterexamples are 1-based to match written presentations.
    auto ce = [](std::initializer_list<std::pair<const char*, int>> kv) {
        nlohmann::ordered_json j;
        for (const auto& [key, val] : kv) j[key] = val;
        return j;
    };

    {
        auto& step = rep.add("defining_identity");
        step.pass = true;
        for (int i = 0; i < m && step.pass; ++i)
            for (int j = 0; j < m && step.pass; ++j) {
                bool c_in_H = H.contains(ext.c[i][j]);
                int lhs = G.mul(ext.transversal[i], ext.transversal[j]);
                int rhs = G.mul(ext.c[i][j], ext.transversal[ext.k[i][j]]);
                bool conj_ok = true;
                if (j == 0) {
                    for (int a = 0; a < H.size() && conj_ok; ++a) {
                        int expect = G.mul(G.mul(ext.transversal[i], H.members[a]),
                                           G.inv(ext.transversal[i]));
                        conj_ok = ext.conj[i][a] == expect && H.contains(ext.conj[i][a]);
                    }
                }
                if (!c_in_H || lhs != rhs || !conj_ok) {
                    step.pass = false;
                    step.counterexample = ce({{"i", i + 1}, {"j", j + 1}});
                }
            }
    }
    {
        auto& step = rep.add("unit_identities");
        step.pass = true;
        for (int j = 0; j < m && step.pass; ++j)
            if (ext.c[0][j] != 0 || ext.k[0][j] != j || ext.c[j][0] != 0 || ext.k[j][0] != j) {
                step.pass = false;
                step.counterexample = ce({{"j", j + 1}});
            }
        for (int a = 0; a < H.size() && step.pass; ++a)
            if (ext.conj[0][a] != H.members[a]) {
                step.pass = false;
                step.counterexample = ce({{"member", H.members[a]}});
            }
    }
    {
        auto& step = rep.add("associativity_identities");
        step.pass = true;
        for (int i = 0; i < m && step.pass; ++i)
            for (int j = 0; j < m && step.pass; ++j)
                for (int l = 0; l < m && step.pass; ++l) {
                    bool idx_ok = ext.k[ext.k[i][j]][l] == ext.k[i][ext.k[j][l]];
                    int lhs = G.mul(ext.c[i][j], ext.c[ext.k[i][j]][l]);
                    int rhs = G.mul(ext.conj_apply(i, ext.c[j][l]), ext.c[i][ext.k[j][l]]);
                    if (!idx_ok || lhs != rhs) {
                        step.pass = false;
                        step.counterexample = ce({{"i", i + 1}, {"j", j + 1}, {"l", l + 1}});
                    }
                }
    }
    {
        auto& step = rep.add("conjugation_composition");
        step.pass = true;
        for (int i = 0; i < m && step.pass; ++i)
            for (int j = 0; j < m && step.pass; ++j)
                for (int a = 0; a < H.size() && step.pass; ++a) {
                    int h = H.members[a];
                    int lhs = ext.conj_apply(i, ext.conj_apply(j, h));
                    int cij = ext.c[i][j];
                    int rhs = G.mul(G.mul(cij, ext.conj_apply(ext.k[i][j], h)), G.inv(cij));
                    if (lhs != rhs) {
                        step.pass = false;
                        step.counterexample =
                            ce({{"i", i + 1}, {"j", j + 1}, {"h", h}});
                    }
                }
    }
    return rep;
}

nlohmann::ordered_json extension_to_json(const ExtensionData& ext) {
    nlohmann::ordered_json j;
    j["m"] = ext.m;
    j["transversal"] = ext.transversal;
    j["c"] = ext.c;
    // k is reported 1-based, matching the written form t_i t_j = c_ij t_k(i,j).
    auto k1 = nlohmann::ordered_json::array();
    for (const auto& row : ext.k) {
        auto r = nlohmann::ordered_json::array();
        for (int v : row) r.push_back(v + 1);
        k1.push_back(std::move(r));
    }
    j["k"] = std::move(k1);
    j["sigma"] = ext.conj;
    return j;
}

}  // namespace biinterp
