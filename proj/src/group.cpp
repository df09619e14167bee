#include "biinterp/group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace biinterp {

GroupTable GroupTable::validate(const std::vector<std::vector<int>>& raw,
                                std::vector<std::string> names) {
    const int n = static_cast<int>(raw.size());
    if (n == 0) throw Error("empty table");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(raw[i].size()) != n)
            throw Error("table is not square at row " + std::to_string(i));
        for (int j = 0; j < n; ++j)
            if (raw[i][j] < 0 || raw[i][j] >= n)
                throw NotLatinSquare(i, j, "entry out of range");
    }
    // Latin square: rows first, then columns; report the first repeated cell.
    for (int i = 0; i < n; ++i) {
        std::vector<int> seen(n, -1);
        for (int j = 0; j < n; ++j) {
            if (seen[raw[i][j]] >= 0)
                throw NotLatinSquare(i, j, "row repeats value " + std::to_string(raw[i][j]));
            seen[raw[i][j]] = j;
        }
    }
    for (int j = 0; j < n; ++j) {
        std::vector<int> seen(n, -1);
        for (int i = 0; i < n; ++i) {
            if (seen[raw[i][j]] >= 0)
                throw NotLatinSquare(i, j, "column repeats value " + std::to_string(raw[i][j]));
            seen[raw[i][j]] = i;
        }
    }
    for (int j = 0; j < n; ++j)
        if (raw[0][j] != j) throw NoIdentityAtZero(0, j);
    for (int i = 0; i < n; ++i)
        if (raw[i][0] != i) throw NoIdentityAtZero(i, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (raw[raw[i][j]][l] != raw[i][raw[j][l]]) throw NotAssociative(i, j, l);

    GroupTable g;
    g.order_ = n;
    g.table_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table_[static_cast<size_t>(i) * n + j] = raw[i][j];
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int x = 0; x < n; ++x) {
            if (g.mul(a, x) == 0) {
                if (g.mul(x, a) != 0) throw Error("one-sided inverse");  // unreachable after checks
                g.inverse_[a] = x;
                break;
            }
        }
    }
    if (!names.empty() && static_cast<int>(names.size()) != n)
        throw Error("names list length does not match order");
    g.names_ = std::move(names);
    return g;
}

std::string GroupTable::name_of(int a) const {
    if (a >= 0 && a < static_cast<int>(names_.size())) return names_[a];
    return std::to_string(a);
}

int GroupTable::element_order(int a) const {
    int x = a, n = 1;
    while (x != 0) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

GroupPtr validate_group(const std::vector<std::vector<int>>& raw, std::vector<std::string> names) {
    return std::make_shared<const GroupTable>(GroupTable::validate(raw, std::move(names)));
}

namespace {

Perm compose(const Perm& p, const Perm& q) {
    // (p*q)(x) = p(q(x)): apply q first.
    Perm r(p.size());
    for (size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
    return r;
}

std::string perm_name(const Perm& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p.size() > 10 && i) s += '.';
        s += std::to_string(p[i]);
    }
    return s;
}

GroupPtr table_from_elements(const std::vector<Perm>& elems, std::vector<std::string> names) {
    std::map<Perm, int> id_of;
    for (size_t i = 0; i < elems.size(); ++i) id_of[elems[i]] = static_cast<int>(i);
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> raw(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) raw[i][j] = id_of.at(compose(elems[i], elems[j]));
    return validate_group(raw, std::move(names));
}

}  // namespace

GroupPtr close_permutations(int degree, const std::vector<Perm>& generators, int max_order) {
    if (degree <= 0) throw Error("degree must be positive");
    for (size_t g = 0; g < generators.size(); ++g) {
        if (static_cast<int>(generators[g].size()) != degree) throw NotAPermutation(static_cast<int>(g));
        std::vector<bool> hit(degree, false);
        for (int v : generators[g]) {
            if (v < 0 || v >= degree || hit[v]) throw NotAPermutation(static_cast<int>(g));
            hit[v] = true;
        }
    }
    Perm identity(degree);
    for (int i = 0; i < degree; ++i) identity[i] = i;

    std::vector<Perm> elems{identity};
    std::set<Perm> seen{identity};
    std::vector<Perm> level{identity};
    while (!level.empty()) {
        std::set<Perm> fresh;
        for (const Perm& p : level)
            for (const Perm& g : generators) {
                Perm q = compose(p, g);
                if (!seen.count(q)) fresh.insert(q);
            }
        level.assign(fresh.begin(), fresh.end());  // lexicographic within the level
        for (const Perm& q : level) {
            seen.insert(q);
            elems.push_back(q);
            if (static_cast<int>(elems.size()) > max_order) throw GroupTooLarge(max_order);
        }
    }
    std::vector<std::string> names;
    names.reserve(elems.size());
    for (const Perm& p : elems) names.push_back(perm_name(p));
    return table_from_elements(elems, std::move(names));
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

int Subgroup::local(int g) const {
    auto it = std::lower_bound(members.begin(), members.end(), g);
    if (it == members.end() || *it != g) return -1;
    return static_cast<int>(it - members.begin());
}

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens) {
    std::set<int> got{0};
    std::queue<int> todo;
    todo.push(0);
    for (int g : gens) {
        if (g < 0 || g >= G->order()) throw Error("generator id out of range");
        if (got.insert(g).second) todo.push(g);
    }
    while (!todo.empty()) {
        int a = todo.front();
        todo.pop();
        for (int g : gens) {
            for (int p : {G->mul(a, g), G->mul(g, a)})
                if (got.insert(p).second) todo.push(p);
        }
    }
    Subgroup s;
    s.parent = G;
    s.members.assign(got.begin(), got.end());
    return s;
}

Subgroup make_subgroup(const GroupPtr& G, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup s;
    s.parent = G;
    s.members = std::move(members);
    if (s.members.empty() || s.members[0] != 0) throw NotASubgroup("missing identity");
    for (int a : s.members) {
        if (a < 0 || a >= G->order()) throw NotASubgroup("member out of range");
        if (!s.contains(G->inv(a))) throw NotASubgroup("not closed under inverse");
        for (int b : s.members)
            if (!s.contains(G->mul(a, b))) throw NotASubgroup("not closed under product");
    }
    return s;
}

bool is_normal(const Subgroup& S) {
    const GroupTable& G = *S.parent;
    for (int g = 0; g < G.order(); ++g)
        for (int h : S.members)
            if (!S.contains(G.mul(G.mul(g, h), G.inv(g)))) return false;
    return true;
}

CosetDecomposition coset_decomposition(const Subgroup& H) {
    const GroupTable& G = *H.parent;
    CosetDecomposition dec;
    dec.subgroup = H;
    dec.coset_of.assign(G.order(), -1);
    for (int g = 0; g < G.order(); ++g) {
        if (dec.coset_of[g] >= 0) continue;
        std::vector<int> coset;
        coset.reserve(H.members.size());
        for (int h : H.members) coset.push_back(G.mul(h, g));
        std::sort(coset.begin(), coset.end());
        int idx = static_cast<int>(dec.cosets.size());
        for (int x : coset) dec.coset_of[x] = idx;
        dec.cosets.push_back(std::move(coset));
    }
    return dec;
}

std::vector<int> canonical_transversal(const CosetDecomposition& dec) {
    std::vector<int> t;
    t.reserve(dec.cosets.size());
    for (const auto& coset : dec.cosets) t.push_back(coset.front());
    return t;
}

GroupPtr cyclic(int n, int max_order) {
    if (n <= 0) throw Error("order must be positive");
    if (n > max_order) throw GroupTooLarge(max_order);
    std::vector<std::vector<int>> raw(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        names[i] = i == 0 ? "e" : (i == 1 ? "a" : "a^" + std::to_string(i));
        for (int j = 0; j < n; ++j) raw[i][j] = (i + j) % n;
    }
    return validate_group(raw, std::move(names));
}

GroupPtr dihedral(int n, int max_order) {
    if (n <= 0) throw Error("order must be positive");
    if (2 * n > max_order) throw GroupTooLarge(max_order);
    // ids 0..n-1: r^a; ids n..2n-1: s*r^a, with s r = r^-1 s.
    auto id = [n](bool flip, int a) { return (flip ? n : 0) + ((a % n) + n) % n; };
    const int m = 2 * n;
    std::vector<std::vector<int>> raw(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            bool fx = x >= n, fy = y >= n;
            int a = x % n, b = y % n;
            if (!fx && !fy) raw[x][y] = id(false, a + b);
            else if (!fx && fy) raw[x][y] = id(true, b - a);
            else if (fx && !fy) raw[x][y] = id(true, a + b);
            else raw[x][y] = id(false, b - a);
        }
    std::vector<std::string> names(m);
    for (int a = 0; a < n; ++a) {
        names[a] = a == 0 ? "e" : (a == 1 ? "r" : "r^" + std::to_string(a));
        names[n + a] = a == 0 ? "s" : (a == 1 ? "s*r" : "s*r^" + std::to_string(a));
    }
    return validate_group(raw, std::move(names));
}

GroupPtr symmetric(int n) {
    if (n < 1 || n > 5) throw GroupTooLarge(120);
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<Perm> elems;
    do {
        elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> names;
    names.reserve(elems.size());
    for (const Perm& q : elems) names.push_back(perm_name(q));
    return table_from_elements(elems, std::move(names));
}

GroupPtr quaternion8() {
    // ids: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k.
    auto enc = [](int axis, int sign) { return 2 * axis + sign; };
    // axis 0 is the scalar unit; axes 1,2,3 are i,j,k.
    auto mulq = [&](int x, int y) {
        int ax = x / 2, sx = x % 2, ay = y / 2, sy = y % 2;
        int sign = sx ^ sy;
        if (ax == 0) return enc(ay, sign);
        if (ay == 0) return enc(ax, sign);
        if (ax == ay) return enc(0, sign ^ 1);  // i*i = -1
        // i*j=k, j*k=i, k*i=j; reversed order flips the sign.
        int az = 6 - ax - ay;
        bool forward = (ay - ax + 3) % 3 == 1;
        return enc(az, sign ^ (forward ? 0 : 1));
    };
    std::vector<std::vector<int>> raw(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) raw[x][y] = mulq(x, y);
    return validate_group(raw, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B, int max_order) {
    long long n = static_cast<long long>(A->order()) * B->order();
    if (n > max_order) throw GroupTooLarge(max_order);
    const int nb = B->order(), total = static_cast<int>(n);
    std::vector<std::vector<int>> raw(total, std::vector<int>(total));
    std::vector<std::string> names(total);
    for (int x = 0; x < total; ++x) {
        names[x] = "(" + A->name_of(x / nb) + "," + B->name_of(x % nb) + ")";
        for (int y = 0; y < total; ++y)
            raw[x][y] = A->mul(x / nb, y / nb) * nb + B->mul(x % nb, y % nb);
    }
    return validate_group(raw, std::move(names));
}

GroupPtr subgroup_table(const Subgroup& S) {
    const GroupTable& G = *S.parent;
    const int n = S.size();
    std::vector<std::vector<int>> raw(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (int a = 0; a < n; ++a) {
        names[a] = G.name_of(S.members[a]);
        for (int b = 0; b < n; ++b) {
            int p = S.local(G.mul(S.members[a], S.members[b]));
            if (p < 0) throw NotASubgroup("not closed under product");
            raw[a][b] = p;
        }
    }
    return validate_group(raw, std::move(names));
}

GroupPtr group_from_json(const nlohmann::json& j, int max_order) {
    const std::string format = j.at("format").get<std::string>();
    if (format == "cayley") {
        auto raw = j.at("table").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(raw.size()) > max_order) throw GroupTooLarge(max_order);
        if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(raw.size()))
            throw Error("declared order does not match table size");
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return validate_group(raw, std::move(names));
    }
    if (format == "perm") {
        int degree = j.at("degree").get<int>();
        auto gens = j.at("generators").get<std::vector<Perm>>();
        return close_permutations(degree, gens, max_order);
    }
    throw Error("unknown group format '" + format + "'");
}

nlohmann::ordered_json group_to_json(const GroupTable& G) {
    nlohmann::ordered_json j;
    j["format"] = "cayley";
    j["order"] = G.order();
    auto table = nlohmann::ordered_json::array();
    for (int i = 0; i < G.order(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (int k = 0; k < G.order(); ++k) row.push_back(G.mul(i, k));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    if (G.has_names()) j["names"] = G.names();
    return j;
}

}  // namespace biinterp
