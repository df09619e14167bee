#pragma once

#include <map>
#include <optional>
#include <vector>

#include "biinterp/extension.hpp"

namespace biinterp {

/// Tuple shapes. A group element g = h * t_i is encoded as a tuple over H
/// whose shape depends on the coset i and on whether h = 1:
///   Standard (index m >= 3): width m; h != 1 puts h in slot i and 1
///   elsewhere; h = 1 puts 1 in slot i and the marker xi elsewhere.
///   Star (index m = 2): width 3; the four rows are (h,1,1), (1,h,1),
///   (xi,1,xi) for t_2 and (1,xi,xi) for 1.
enum class GammaMode { Standard, Star };

enum class ModePolicy { Auto, ForceStandard, ForceStar };

/// Classification of a tuple: which coset row it matches, whether it is the
/// h = 1 row of that coset, and the payload h when it is not.
struct RowClass {
    int coset = 0;
    bool unit = false;
    int payload = 0;  // parent id; meaningful iff !unit
};

struct GammaCodec {
    ExtensionPtr ext;
    GammaMode mode = GammaMode::Standard;
    int xi = 0;     // marker element of H, never the identity
    int width = 0;  // m in Standard mode, 3 in Star mode

    std::vector<std::vector<int>> tuples;       // the image roster, sorted
    std::vector<std::vector<int>> encode_of;    // g -> tuple
    std::map<std::vector<int>, int> decode_of;  // tuple -> g (first writer wins)
    std::vector<std::pair<int, int>> collisions;  // (g, g') pairs sharing a tuple

    bool bijective() const { return collisions.empty(); }

    /// Slot layout of a row: fixed parent ids, with std::nullopt marking the
    /// payload slot of a non-unit row.
    std::vector<std::optional<int>> row_shape(int coset, bool unit) const;
};

/// The smallest non-identity member of H. Requires |H| >= 2.
int choose_xi(const Subgroup& H);

/// Builds the codec. Auto selects Star exactly when the index is 2. With
/// ForceStandard the codec is still built when the encoding is not
/// injective; the collisions are recorded for diagnostics instead of
/// raising.
GammaCodec build_codec(ExtensionPtr ext, ModePolicy policy = ModePolicy::Auto);

std::vector<int> encode(const GammaCodec& codec, int g);

/// Pattern-matches a tuple against the 2m (or 8) row shapes.
std::optional<RowClass> classify(const GammaCodec& codec, const std::vector<int>& tuple);

/// Inverse of encode; throws NotInGamma off the image.
int decode(const GammaCodec& codec, const std::vector<int>& tuple);

/// The binary operation on encoded tuples, computed from the explicit
/// per-row-pair case formulas (payload product h * conj_i(k) * c_ij placed
/// at slot k(i,j)). Must agree pointwise with gamma_op_generic.
std::vector<int> gamma_op(const GammaCodec& codec, const std::vector<int>& a,
                          const std::vector<int>& b);

/// The same operation computed the blunt way: decode, multiply in G, encode.
std::vector<int> gamma_op_generic(const GammaCodec& codec, const std::vector<int>& a,
                                  const std::vector<int>& b);

nlohmann::ordered_json codec_to_json(const GammaCodec& codec);

}  // namespace biinterp
