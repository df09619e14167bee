#pragma once

#include <memory>
#include <vector>

#include "biinterp/group.hpp"
#include "biinterp/report.hpp"

namespace biinterp {

/// The data a finite-index normal subgroup H of G carries: the canonical
/// transversal t_1=1,..,t_m, the cocycle c and index map k defined by
/// t_i * t_j = c[i][j] * t[k[i][j]], and the conjugation maps
/// conj_i : h -> t_i * h * t_i^-1. Storage is 0-based; written reports use
/// the 1-based indices of the usual presentation.
struct ExtensionData {
    GroupPtr G;
    Subgroup H;
    CosetDecomposition dec;
    int m = 0;
    std::vector<int> transversal;         // transversal[0] = 0
    std::vector<std::vector<int>> c;      // element ids, all in H
    std::vector<std::vector<int>> k;      // coset indices, 0-based
    std::vector<std::vector<int>> conj;   // conj[i][a] = t_i * H.members[a] * t_i^-1

    /// conj_i applied to a parent-id member of H.
    int conj_apply(int i, int h) const { return conj[i][H.local(h)]; }
};

using ExtensionPtr = std::shared_ptr<const ExtensionData>;

/// Extracts the extension data. Requires H normal, |H| >= 2 and index >= 2;
/// index 1 is rejected as TrivialIndex (G = H is the identity case, not an
/// extension problem).
ExtensionPtr extension_data(const GroupPtr& G, const Subgroup& H);

/// Rechecks every identity the data must satisfy, for data that may have
/// been edited: the defining identity, the unit identities forced by
/// t_1 = 1, the two associativity identities, and the composition law
/// conj_i . conj_j = inn(c_ij) . conj_k(i,j). Failures become report
/// entries with the first offending index triple, never exceptions.
VerificationReport verify_extension_identities(const ExtensionData& ext);

nlohmann::ordered_json extension_to_json(const ExtensionData& ext);

}  // namespace biinterp
