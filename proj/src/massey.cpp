#include "masseykit/massey.hpp"

#include <stdexcept>

namespace masseykit {

namespace {

std::string entry_name(unsigned i, unsigned j) { return "c_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

void require_character(const Cochain& chi, const char* what) {
    if (chi.degree() != 1 || !is_cocycle(chi))
        throw std::invalid_argument(std::string(what) + " is not a homomorphism G -> F_p");
}

}  // namespace

const Cochain& DefiningSystem::at(unsigned i, unsigned j) const {
    auto it = entries.find({i, j});
    if (it == entries.end()) throw std::out_of_range("defining system has no entry " + entry_name(i, j));
    return it->second;
}

DefiningSystem make_triple_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                  const Cochain& phi_ab, const Cochain& phi_bc) {
    DefiningSystem s;
    s.n = 3;
    s.entries.emplace(EntryIndex{1, 2}, chi_a);
    s.entries.emplace(EntryIndex{2, 3}, chi_b);
    s.entries.emplace(EntryIndex{3, 4}, chi_c);
    s.entries.emplace(EntryIndex{1, 3}, phi_ab);
    s.entries.emplace(EntryIndex{2, 4}, phi_bc);
    return s;
}

std::optional<DefiningSystem> find_defining_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                                   const CoboundarySolver& solver) {
    require_character(chi_a, "chi_a");
    require_character(chi_b, "chi_b");
    require_character(chi_c, "chi_c");
    auto phi_ab = solver.solve(cup(chi_a, chi_b));
    if (!phi_ab) return std::nullopt;
    auto phi_bc = solver.solve(cup(chi_b, chi_c));
    if (!phi_bc) return std::nullopt;
    return make_triple_system(chi_a, chi_b, chi_c, *phi_ab, *phi_bc);
}

std::optional<DefiningSystem> find_defining_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c) {
    return find_defining_system(chi_a, chi_b, chi_c, CoboundarySolver(chi_a.group(), chi_a.modulus()));
}

SystemCheck verify_defining_system_n(const std::vector<Cochain>& c, const DefiningSystem& system) {
    SystemCheck out;
    const unsigned n = static_cast<unsigned>(c.size());
    if (n < 2) {
        out.failure = "need at least two cochains";
        return out;
    }
    if (system.n != n) {
        out.failure = "system is for " + std::to_string(system.n) + " cochains, got " + std::to_string(n);
        return out;
    }
    for (unsigned i = 1; i <= n + 1; ++i)
        for (unsigned j = i + 1; j <= n + 1; ++j) {
            if (i == 1 && j == n + 1) continue;
            auto it = system.entries.find({i, j});
            if (it == system.entries.end()) {
                out.failure = "missing entry " + entry_name(i, j);
                return out;
            }
            if (it->second.degree() != 1 || it->second.group() != c[0].group() ||
                it->second.modulus() != c[0].modulus()) {
                out.failure = entry_name(i, j) + " is not a 1-cochain on the common group";
                return out;
            }
        }
    for (unsigned i = 1; i <= n; ++i)
        if (!(system.at(i, i + 1) == c[i - 1])) {
            out.failure = entry_name(i, i + 1) + " != c_" + std::to_string(i);
            return out;
        }
    for (unsigned len = 2; len <= n; ++len)
        for (unsigned i = 1; i + len <= n + 1; ++i) {
            unsigned j = i + len;
            if (i == 1 && j == n + 1) continue;
            Cochain rhs(c[0].group(), 2, c[0].modulus());
            for (unsigned k = i + 1; k < j; ++k) rhs = rhs + cup(system.at(i, k), system.at(k, j));
            if (!(differential(system.at(i, j)) == rhs)) {
                out.failure = "d " + entry_name(i, j) + " != sum of cups";
                return out;
            }
        }
    Cochain value(c[0].group(), 2, c[0].modulus());
    for (unsigned k = 2; k <= n; ++k) value = value + cup(system.at(1, k), system.at(k, n + 1));
    out.value_is_cocycle = is_cocycle(value);
    out.value = std::move(value);
    out.valid = true;
    return out;
}

Cochain massey_value(const DefiningSystem& phi) {
    if (phi.n != 3) throw std::invalid_argument("massey_value expects a triple defining system");
    auto check = verify_defining_system_n({phi.at(1, 2), phi.at(2, 3), phi.at(3, 4)}, phi);
    if (!check.valid) throw std::invalid_argument("invalid defining system: " + check.failure);
    // chi_a u phi_{b,c} + phi_{a,b} u chi_c
    return cup(phi.at(1, 2), phi.phi_bc()) + cup(phi.phi_ab(), phi.at(3, 4));
}

// ---------------------------------------------------------------- coset

std::optional<MasseyCoset> massey_coset(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                        const CoboundarySolver& solver, const std::vector<Cochain>& z1) {
    auto system = find_defining_system(chi_a, chi_b, chi_c, solver);
    if (!system) return std::nullopt;
    MasseyCoset coset{massey_value(*system), {}, {}, *system};
    for (const auto& eta : z1) {
        coset.left.push_back(cup(chi_a, eta));
        coset.right.push_back(cup(eta, chi_c));
    }
    return coset;
}

std::optional<MasseyCoset> massey_coset(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c) {
    CoboundarySolver solver(chi_a.group(), chi_a.modulus());
    return massey_coset(chi_a, chi_b, chi_c, solver, cocycles_degree1(chi_a.group(), chi_a.modulus()));
}

bool contains_zero(const MasseyCoset& coset, const CoboundarySolver& solver) {
    FpSubspace span = solver.space();
    for (const auto& c : coset.left) span.add_dense(c.values());
    for (const auto& c : coset.right) span.add_dense(c.values());
    return span.contains_dense(coset.base.values());
}

bool contains_zero(const MasseyCoset& coset) {
    return contains_zero(coset, CoboundarySolver(coset.base.group(), coset.base.modulus()));
}

// ---------------------------------------------------------------- unipotent side

std::vector<fp_t> UnipotentHom::matrix(elem_t g) const {
    const unsigned N = n + 1;
    std::vector<fp_t> m(N * N, 0);
    for (unsigned i = 0; i < N; ++i) m[i * N + i] = 1;
    for (const auto& [ij, f] : entries) m[(ij.first - 1) * N + ij.second - 1] = f.at(g);
    return m;
}

bool UnipotentHom::is_homomorphism() const {
    if (!source) return false;
    const unsigned N = n + 1;
    const std::size_t ord = source->order();
    for (const auto& [ij, f] : entries)
        if (f.size() != ord || ij.first < 1 || ij.first >= ij.second || ij.second > N) return false;
    PrimeField F(p);
    std::vector<std::vector<fp_t>> mats(ord);
    for (elem_t g = 0; g < ord; ++g) mats[g] = matrix(g);
    for (elem_t g = 0; g < ord; ++g)
        for (elem_t h = 0; h < ord; ++h) {
            const auto& A = mats[g];
            const auto& B = mats[h];
            const auto& C = mats[source->mul(g, h)];
            for (const auto& [ij, f] : entries) {
                unsigned i = ij.first - 1, j = ij.second - 1;
                fp_t acc = 0;
                for (unsigned k = i; k <= j; ++k) acc = F.add(acc, F.mul(A[i * N + k], B[k * N + j]));
                if (acc != C[i * N + j]) return false;
            }
        }
    return true;
}

UnipotentHom dwyer_from_system(const DefiningSystem& system) {
    UnipotentHom phi;
    phi.source = system.group();
    phi.n = system.n;
    phi.p = system.modulus();
    for (const auto& [ij, c] : system.entries) phi.entries.emplace(ij, (-c).values());
    return phi;
}

DefiningSystem dwyer_to_system(const UnipotentHom& phi) {
    if (!phi.is_homomorphism()) throw std::invalid_argument("dwyer_to_system: map is not a homomorphism");
    DefiningSystem s;
    s.n = phi.n;
    for (const auto& [ij, f] : phi.entries) {
        if (ij == EntryIndex{1, phi.n + 1}) continue;
        s.entries.emplace(ij, -Cochain(phi.source, 1, phi.p, f));
    }
    return s;
}

std::optional<std::vector<fp_t>> lift_corner(const UnipotentHom& phi, const CoboundarySolver& solver) {
    const unsigned N = phi.n + 1;
    const std::size_t ord = phi.source->order();
    PrimeField F(phi.p);
    UnipotentHom bar = phi;
    bar.entries.erase({1, N});
    std::vector<std::vector<fp_t>> mats(ord);
    for (elem_t g = 0; g < ord; ++g) mats[g] = bar.matrix(g);
    Cochain rhs(phi.source, 2, phi.p);
    for (elem_t g = 0; g < ord; ++g)
        for (elem_t h = 0; h < ord; ++h) {
            fp_t corner = 0;
            for (unsigned k = 0; k < N; ++k) corner = F.add(corner, F.mul(mats[g][k], mats[h][k * N + N - 1]));
            rhs.values()[g * ord + h] = F.neg(corner);
        }
    auto f = solver.solve(rhs);
    if (!f) return std::nullopt;
    return f->values();
}

std::optional<std::vector<fp_t>> lift_corner(const UnipotentHom& phi) {
    return lift_corner(phi, CoboundarySolver(phi.source, phi.p));
}

bool lift_exists(const UnipotentHom& phi) { return lift_corner(phi).has_value(); }

std::optional<bool> lift_decision(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                  const CoboundarySolver& solver, const std::vector<Cochain>& z1) {
    auto base = find_defining_system(chi_a, chi_b, chi_c, solver);
    if (!base) return std::nullopt;
    const std::size_t d = z1.size();
    const fp_t p = chi_a.modulus();
    std::size_t total = 1;
    for (std::size_t i = 0; i < 2 * d; ++i) {
        total *= p;
        if (total > (1u << 16))
            throw std::length_error("lift_decision: more than 2^16 defining systems to enumerate");
    }
    std::vector<fp_t> coeff(2 * d, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t x = idx;
        for (auto& c : coeff) {
            c = static_cast<fp_t>(x % p);
            x /= p;
        }
        Cochain ab = base->phi_ab(), bc = base->phi_bc();
        for (std::size_t i = 0; i < d; ++i) {
            if (coeff[i]) ab = ab + z1[i].scaled(coeff[i]);
            if (coeff[d + i]) bc = bc + z1[i].scaled(coeff[d + i]);
        }
        auto phi = dwyer_from_system(make_triple_system(chi_a, chi_b, chi_c, ab, bc));
        if (lift_corner(phi, solver)) return true;
    }
    return false;
}

// ---------------------------------------------------------------- psi cochains

PsiCochains psi_cochains(fp_t p, const GroupPtr& g, elem_t sigma_a, elem_t sigma_b) {
    if (g->order() != static_cast<std::size_t>(p) * p || !g->is_abelian())
        throw std::invalid_argument("psi_cochains: group is not (Z/" + std::to_string(p) + ")^2");
    if (sigma_a >= g->order() || sigma_b >= g->order()) throw std::out_of_range("psi_cochains: generator index");
    std::vector<std::int64_t> ci(g->order(), -1), cj(g->order(), -1);
    for (std::uint32_t i = 0; i < p; ++i)
        for (std::uint32_t j = 0; j < p; ++j) {
            elem_t x = g->mul(g->pow(sigma_a, i), g->pow(sigma_b, j));
            if (ci[x] >= 0) throw std::invalid_argument("psi_cochains: sigma_a, sigma_b do not form a basis");
            ci[x] = i;
            cj[x] = j;
        }
    if (g->element_order(sigma_a) != p || g->element_order(sigma_b) != p)
        throw std::invalid_argument("psi_cochains: generators must have order p");
    PsiCochains out{Cochain::from_function(g, p, [&](elem_t x) { return ci[x]; }),
                    Cochain::from_function(g, p, [&](elem_t x) { return cj[x]; }),
                    Cochain::from_function(g, p, [&](elem_t x) { return -ci[x] * cj[x]; }),
                    Cochain::from_function(g, p, [&](elem_t x) { return -cj[x] * cj[x]; })};
    out.psi1_identity = differential(out.psi1) == cup(out.chi_a, out.chi_b) + cup(out.chi_b, out.chi_a);
    out.psi2_identity = differential(out.psi2) == cup(out.chi_b, out.chi_b).scaled(2);
    return out;
}

std::vector<std::vector<fp_t>> projective_representatives(std::size_t dim, fp_t p) {
    std::vector<std::vector<fp_t>> out{std::vector<fp_t>(dim, 0)};
    for (std::size_t lead = 0; lead < dim; ++lead) {
        std::size_t tail = dim - lead - 1;
        std::size_t count = 1;
        for (std::size_t i = 0; i < tail; ++i) count *= p;
        for (std::size_t code = 0; code < count; ++code) {
            std::vector<fp_t> v(dim, 0);
            v[lead] = 1;
            std::size_t x = code;
            for (std::size_t i = dim; i-- > lead + 1;) {
                v[i] = static_cast<fp_t>(x % p);
                x /= p;
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

Cochain combine(const GroupPtr& g, fp_t p, const std::vector<Cochain>& basis, const std::vector<fp_t>& coeffs) {
    if (coeffs.size() != basis.size()) throw std::invalid_argument("combine: coefficient count != basis size");
    Cochain r(g, basis.empty() ? 1 : basis[0].degree(), p);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i] % p) r = r + basis[i].scaled(coeffs[i]);
    return r;
}

// ---------------------------------------------------------------- restrictions

Subgroup kernel_subgroup(const Cochain& chi) {
    if (chi.degree() != 1) throw std::invalid_argument("kernel_subgroup expects a 1-cochain");
    std::vector<elem_t> k;
    for (elem_t g = 0; g < chi.order(); ++g)
        if (chi(g) == 0) k.push_back(g);
    return subgroup_from_elements(chi.group(), std::move(k));
}

RestrictionReport restriction_identities(const DefiningSystem& phi) {
    RestrictionReport r;
    const Cochain value = massey_value(phi);
    const Cochain& chi_a = phi.at(1, 2);
    const Cochain& chi_c = phi.at(3, 4);
    auto ker_a = kernel_subgroup(chi_a);
    auto ker_c = kernel_subgroup(chi_c);
    std::vector<elem_t> both;
    for (elem_t g = 0; g < chi_a.order(); ++g)
        if (chi_a(g) == 0 && chi_c(g) == 0) both.push_back(g);
    auto ker_ac = subgroup_from_elements(chi_a.group(), std::move(both));

    r.on_ker_a = restrict(value, ker_a) == restrict(cup(phi.phi_ab(), chi_c), ker_a);
    r.on_ker_c = restrict(value, ker_c) == restrict(cup(chi_a, phi.phi_bc()), ker_c);
    r.on_ker_ac = restrict(value, ker_ac).is_zero();
    r.pairs_checked = ker_a.order() * ker_a.order() + ker_c.order() * ker_c.order() + ker_ac.order() * ker_ac.order();
    return r;
}

}  // namespace masseykit
