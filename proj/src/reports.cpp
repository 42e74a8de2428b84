#include "masseykit/reports.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "masseykit/fp_linalg.hpp"
#include "masseykit/groups.hpp"
#include "masseykit/massey.hpp"

namespace masseykit::reports {

namespace {

Json vec_json(const std::vector<fp_t>& v) { return Json(v); }

Json triple_json(const std::vector<fp_t>& a, const std::vector<fp_t>& b, const std::vector<fp_t>& c) {
    return Json::array({vec_json(a), vec_json(b), vec_json(c)});
}

Json space_json(const CohomologyBasis& b) {
    return Json{{"dimension", b.dimension()}, {"cocycles", b.cocycle_dim}, {"coboundaries", b.coboundary_dim}};
}

template <class T>
Json optional_json(const std::optional<T>& x) {
    return x ? Json(*x) : Json(nullptr);
}

Json optional_ratfunc(const std::optional<RatFunc>& x) { return x ? Json(x->to_string()) : Json(nullptr); }

// Coordinates of c over `basis`, by enumeration of all coefficient vectors.
std::optional<std::vector<fp_t>> coordinates_of(const Cochain& c, const std::vector<Cochain>& basis) {
    fp_t p = c.modulus();
    std::size_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<fp_t> v(basis.size());
        std::size_t x = code;
        for (auto& d : v) {
            d = static_cast<fp_t>(x % p);
            x /= p;
        }
        if (combine(c.group(), p, basis, v) == c) return v;
    }
    return std::nullopt;
}

// The triple underlying the identity of Ubar_4(F_p).
std::array<Cochain, 3> tautological_triple(const GroupPtr& ub, fp_t p) {
    auto pos = unipotent_positions(3, true);
    UnipotentHom id{ub, 3, p, {}};
    for (std::size_t q = 0; q < pos.size(); ++q) {
        std::vector<fp_t> values(ub->order());
        for (elem_t g = 0; g < ub->order(); ++g) values[g] = unipotent_digits(pos.size(), p, g)[q];
        id.entries.emplace(pos[q], std::move(values));
    }
    DefiningSystem sys = dwyer_to_system(id);
    return {sys.at(1, 2), sys.at(2, 3), sys.at(3, 4)};
}

}  // namespace

Json cochain_to_json(const Cochain& c, std::string_view spec) {
    return Json{{"group", std::string(spec)}, {"degree", c.degree()}, {"p", c.modulus()}, {"values", c.values()}};
}

Cochain cochain_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("degree") || !j.contains("values"))
        throw std::invalid_argument("cochain JSON needs group, degree and values");
    auto spec = j.at("group").get<std::string>();
    GroupPtr g = parse_group_spec(spec);
    fp_t p = j.contains("p") ? j.at("p").get<fp_t>() : default_prime(spec);
    auto degree = j.at("degree").get<unsigned>();
    auto values = j.at("values").get<std::vector<std::int64_t>>();
    if (degree > 3) throw std::invalid_argument("cochain degree above 3");
    std::size_t expected = 1;
    for (unsigned i = 0; i < degree; ++i) expected *= g->order();
    if (values.size() != expected) throw std::invalid_argument("cochain has the wrong number of values");
    std::vector<fp_t> reduced(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) reduced[i] = static_cast<fp_t>(((values[i] % p) + p) % p);
    return Cochain(std::move(g), degree, p, std::move(reduced));
}

fp_t run_prime(std::string_view spec, std::optional<fp_t> p) {
    if (!p) return default_prime(spec);
    if (!is_prime(*p)) throw std::invalid_argument("p = " + std::to_string(*p) + " is not prime");
    return *p;
}

bool cohomology(std::string_view spec, std::optional<fp_t> p, bool with_basis, const Sink& out) {
    GroupPtr g = parse_group_spec(spec);
    fp_t q = run_prime(spec, p);
    CohomologyBasis h1 = cohomology(g, 1, q);
    Json r{{"group", std::string(spec)}, {"order", g->order()}, {"p", q}, {"h1", space_json(h1)}};
    std::optional<CohomologyBasis> h2;
    if (g->order() <= kMaxH2Order) h2 = cohomology(g, 2, q);
    r["h2"] = h2 ? space_json(*h2) : Json(nullptr);
    if (with_basis) {
        Json b{{"h1", Json::array()}, {"h2", h2 ? Json::array() : Json(nullptr)}};
        for (const auto& c : h1.representatives) b["h1"].push_back(cochain_to_json(c, spec));
        if (h2)
            for (const auto& c : h2->representatives) b["h2"].push_back(cochain_to_json(c, spec));
        r["basis"] = std::move(b);
    }
    out(r);
    return true;
}

bool massey_scan(std::string_view spec, std::optional<fp_t> p, const Sink& out) {
    GroupPtr g = parse_group_spec(spec);
    fp_t q = run_prime(spec, p);
    CoboundarySolver solver(g, q);
    auto z1 = cocycles_degree1(g, q);
    auto reps = projective_representatives(z1.size(), q);
    reps.erase(reps.begin());  // the zero vector
    bool ok = true;
    auto record = [&](const std::vector<fp_t>& va, const std::vector<fp_t>& vb, const std::vector<fp_t>& vc,
                      bool tautological) {
        Cochain a = combine(g, q, z1, va), b = combine(g, q, z1, vb), c = combine(g, q, z1, vc);
        auto coset = massey_coset(a, b, c, solver, z1);
        auto lift = lift_decision(a, b, c, solver, z1);
        std::optional<bool> cz;
        if (coset) cz = contains_zero(*coset, solver);
        bool agree = coset.has_value() == lift.has_value() && (!coset || *cz == *lift);
        ok = ok && agree;
        Json r{{"triple", triple_json(va, vb, vc)},
               {"defined", coset.has_value()},
               {"contains_zero", optional_json(cz)},
               {"lift_exists", optional_json(lift)},
               {"agree", agree}};
        if (tautological) r["tautological"] = true;
        out(r);
    };
    for (const auto& va : reps)
        for (const auto& vb : reps)
            for (const auto& vc : reps) record(va, vb, vc, false);
    if (g->name() == "ubar:4," + std::to_string(q)) {
        auto t = tautological_triple(g, q);
        auto ca = coordinates_of(t[0], z1), cb = coordinates_of(t[1], z1), cc = coordinates_of(t[2], z1);
        if (!ca || !cb || !cc) throw std::logic_error("superdiagonal characters are not in the span of Z^1");
        record(*ca, *cb, *cc, true);
    }
    return ok;
}

bool dwyer_check(std::string_view spec, std::optional<fp_t> p, unsigned samples, std::uint64_t seed,
                 const Sink& out) {
    GroupPtr g = parse_group_spec(spec);
    fp_t q = run_prime(spec, p);
    CoboundarySolver solver(g, q);
    auto z1 = cocycles_degree1(g, q);
    Rng rng(seed);
    auto random_vec = [&] {
        std::vector<fp_t> v(z1.size());
        for (auto& x : v) x = static_cast<fp_t>(rng.below(q));
        return v;
    };
    bool ok = true;
    unsigned done = 0, attempts = 0;
    const unsigned limit = 50 * std::max(samples, 1u);
    while (done < samples && attempts < limit) {
        ++attempts;
        auto va = random_vec(), vb = random_vec(), vc = random_vec();
        Cochain a = combine(g, q, z1, va), b = combine(g, q, z1, vb), c = combine(g, q, z1, vc);
        auto base = find_defining_system(a, b, c, solver);
        if (!base) continue;
        Cochain ab = base->phi_ab() + combine(g, q, z1, random_vec());
        Cochain bc = base->phi_bc() + combine(g, q, z1, random_vec());
        DefiningSystem sys = make_triple_system(a, b, c, ab, bc);
        bool valid = verify_defining_system_n({a, b, c}, sys).valid;
        UnipotentHom u = dwyer_from_system(sys);
        bool hom = u.is_homomorphism();
        bool round = hom && dwyer_to_system(u).entries == sys.entries;
        std::optional<bool> lift;
        if (hom) lift = lift_corner(u, solver).has_value();
        ok = ok && valid && hom && round;
        out(Json{{"sample", done},
                 {"triple", triple_json(va, vb, vc)},
                 {"valid", valid},
                 {"homomorphism", hom},
                 {"roundtrip", round},
                 {"lift_exists", optional_json(lift)}});
        ++done;
    }
    ok = ok && done == samples;
    out(Json{{"group", std::string(spec)},
             {"p", q},
             {"samples", done},
             {"requested", samples},
             {"attempts", attempts},
             {"seed", seed},
             {"rng", Rng::kName},
             {"passed", ok}});
    return ok;
}

bool tower(const PrimeFieldSpec& field, std::string_view b, std::optional<std::string> v, std::uint64_t seed,
           const Sink& out) {
    RatFunc bf = parse_ratfunc(b, field.ell);
    AlgebraPtr fb = make_fb(field, bf);
    TowerDescription t = v ? build_tower(field, bf, fb->parse(*v), seed) : random_tower(field, bf, seed);
    TowerChecks c = check_tower(t);
    out(Json{{"ell", field.ell},
             {"p", field.p},
             {"b", t.b.to_string()},
             {"v", t.v.to_string()},
             {"a", t.a.to_string()},
             {"w", t.w.to_string()},
             {"group", "heisenberg:" + std::to_string(field.p)},
             {"checks",
              {{"independence", c.independence},
               {"w_identity", c.w_identity},
               {"galois_order", c.galois_order},
               {"phi_coboundary", c.phi_coboundary},
               {"res_chi_w", c.res_chi_w}}},
             {"seed", seed},
             {"rng", Rng::kName}});
    return c.all();
}

bool crossed(const PrimeFieldSpec& field, std::string_view a2, const CrossedOptions& opts, std::uint64_t seed,
             const Sink& out) {
    RatFunc a2f = parse_ratfunc(a2, field.ell);
    ACPInstance inst = [&] {
        if (!opts.v2) return instance_acp(field, a2f, seed);
        if (is_pth_power(a2f, field.p)) throw PreconditionError("a2 is a p-th power");
        AlgebraPtr f2 = KummerAlgebra::kummer(field, {{"x2", a2f}});
        ACPInstance given = instance_acp(field, a2f, f2->parse(*opts.v2));
        given.seed = seed;
        return given;
    }();
    ACPCReport acpc = acp_check(inst.d);
    CPPtr alg = CrossedProduct::make(inst.d);
    Rng base(seed);
    Rng structure_rng = base.derive(1), assoc_rng = base.derive(2);
    StructureElements s = structure_elements(alg, structure_rng);
    DecompositionReport d = verify_decomposition(alg, s);

    unsigned failures = 0;
    for (unsigned i = 0; i < opts.associativity; ++i) {
        CPElement x = random_cp_element(alg, assoc_rng, 1), y = random_cp_element(alg, assoc_rng, 1),
                  z = random_cp_element(alg, assoc_rng, 1);
        if (!associative_on(x, y, z)) ++failures;
    }
    std::optional<CenterReport> center;
    if (opts.center) center = center_check(alg);

    Json relations = Json::array();
    for (bool r : d.relations.relations) relations.push_back(r);
    Json r{{"instance",
            {{"ell", field.ell},
             {"p", field.p},
             {"a1", inst.d.k.a1.to_string()},
             {"a2", inst.d.k.a2.to_string()},
             {"seed", seed},
             {"v1", inst.v1.to_string()},
             {"v2", inst.v2.to_string()},
             {"attempts", inst.attempts}}},
           {"acpc", acpc.all()},
           {"relations", relations},
           {"relations_passed", d.relations.passed()},
           {"wp", optional_ratfunc(d.wp)},
           {"zp", optional_ratfunc(d.zp)},
           {"commute", d.commute},
           {"rank", d.rank},
           {"rank_p4", d.rank_p4},
           {"decomposition", d.all()},
           {"t", s.t.to_string()},
           {"associativity", {{"triples", opts.associativity}, {"failures", failures}}},
           {"center", center ? Json{{"rank", center->rank}, {"center_is_f", center->center_is_f}} : Json(nullptr)},
           {"rng", Rng::kName}};
    out(r);
    return acpc.all() && d.all() && failures == 0 && (!center || center->center_is_f);
}

}  // namespace masseykit::reports
