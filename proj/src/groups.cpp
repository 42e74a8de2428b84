#include "masseykit/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

#include "masseykit/fp_linalg.hpp"

namespace masseykit {

GroupTable::GroupTable(std::string name, std::size_t order, std::vector<elem_t> table, std::vector<std::string> labels)
    : name_(std::move(name)), order_(order), mul_(std::move(table)), labels_(std::move(labels)) {
    if (order_ == 0) throw std::invalid_argument("group of order 0");
    if (order_ > kMaxTableOrder)
        throw std::length_error("group order " + std::to_string(order_) + " exceeds table limit " +
                                std::to_string(kMaxTableOrder));
    if (mul_.size() != order_ * order_) throw std::invalid_argument("multiplication table has wrong size");
    if (!labels_.empty() && labels_.size() != order_) throw std::invalid_argument("label count != order");
    for (auto v : mul_)
        if (v >= order_) throw std::invalid_argument("multiplication table entry out of range");

    bool found = false;
    for (elem_t e = 0; e < order_ && !found; ++e) {
        bool ok = true;
        for (elem_t g = 0; g < order_ && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("multiplication table has no identity");

    inv_.assign(order_, order_);
    for (elem_t a = 0; a < order_; ++a) {
        std::vector<char> seen(order_, 0);
        for (elem_t b = 0; b < order_; ++b) {
            elem_t c = mul(a, b);
            if (seen[c]) throw std::invalid_argument("multiplication table is not a Latin square");
            seen[c] = 1;
            if (c == identity_) inv_[a] = b;
        }
    }
    for (elem_t a = 0; a < order_; ++a)
        if (mul(inv_[a], a) != identity_) throw std::invalid_argument("left and right inverses differ");
}

elem_t GroupTable::pow(elem_t a, std::int64_t e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    elem_t r = identity_;
    elem_t b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::size_t GroupTable::element_order(elem_t a) const {
    std::size_t n = 1;
    for (elem_t x = a; x != identity_; x = mul(x, a)) ++n;
    return n;
}

std::string GroupTable::label(elem_t a) const {
    if (a >= order_) throw std::out_of_range("element index");
    return labels_.empty() ? std::to_string(a) : labels_[a];
}

bool GroupTable::is_associative() const {
    for (elem_t a = 0; a < order_; ++a)
        for (elem_t b = 0; b < order_; ++b) {
            elem_t ab = mul(a, b);
            for (elem_t c = 0; c < order_; ++c)
                if (mul(ab, c) != mul(a, mul(b, c))) return false;
        }
    return true;
}

bool GroupTable::is_abelian() const {
    for (elem_t a = 0; a < order_; ++a)
        for (elem_t b = a + 1; b < order_; ++b)
            if (!commutes(a, b)) return false;
    return true;
}

// ---------------------------------------------------------------- homs

bool GroupHom::is_homomorphism() const {
    if (!source || !target || image.size() != source->order()) return false;
    for (auto v : image)
        if (v >= target->order()) return false;
    for (elem_t a = 0; a < source->order(); ++a)
        for (elem_t b = 0; b < source->order(); ++b)
            if (image[source->mul(a, b)] != target->mul(image[a], image[b])) return false;
    return true;
}

bool GroupHom::is_surjective() const {
    std::vector<char> hit(target->order(), 0);
    for (auto v : image) hit.at(v) = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool GroupHom::is_injective() const {
    std::vector<char> hit(target->order(), 0);
    for (auto v : image) {
        if (hit.at(v)) return false;
        hit[v] = 1;
    }
    return true;
}

std::vector<elem_t> GroupHom::kernel() const {
    std::vector<elem_t> k;
    for (elem_t g = 0; g < source->order(); ++g)
        if (image[g] == target->identity()) k.push_back(g);
    return k;
}

// ---------------------------------------------------------------- constructors

GroupPtr cyclic(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic group of order 0");
    if (n > kMaxTableOrder) throw std::length_error("cyclic order exceeds table limit " + std::to_string(kMaxTableOrder));
    std::vector<elem_t> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<elem_t>((a + b) % n);
    return std::make_shared<GroupTable>("cyclic:" + std::to_string(n), n, std::move(mul));
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
    std::size_t m = g->order(), n = h->order();
    if (m * n > kMaxTableOrder)
        throw std::length_error("product order exceeds table limit " + std::to_string(kMaxTableOrder));
    std::size_t N = m * n;
    std::vector<elem_t> mul(N * N);
    std::vector<std::string> labels(N);
    for (std::size_t a = 0; a < N; ++a) {
        labels[a] = "(" + g->label(static_cast<elem_t>(a / n)) + "," + h->label(static_cast<elem_t>(a % n)) + ")";
        for (std::size_t b = 0; b < N; ++b) {
            auto x = g->mul(static_cast<elem_t>(a / n), static_cast<elem_t>(b / n));
            auto y = h->mul(static_cast<elem_t>(a % n), static_cast<elem_t>(b % n));
            mul[a * N + b] = static_cast<elem_t>(x * n + y);
        }
    }
    return std::make_shared<GroupTable>("prod:" + g->name() + "," + h->name(), N, std::move(mul), std::move(labels));
}

GroupPtr elementary_abelian(std::uint32_t p, unsigned rank) {
    if (!is_prime(p)) throw std::invalid_argument("elementary abelian group needs a prime");
    if (rank == 0) return cyclic(1);
    GroupPtr g = cyclic(p);
    for (unsigned i = 1; i < rank; ++i) g = direct_product(g, cyclic(p));
    return std::make_shared<GroupTable>("elem:" + std::to_string(p) + "," + std::to_string(rank), g->order(),
                                        g->table(), [&] {
                                            std::vector<std::string> l;
                                            for (elem_t x = 0; x < g->order(); ++x) l.push_back(g->label(x));
                                            return l;
                                        }());
}

elem_t heisenberg_index(std::uint32_t p, std::int64_t i, std::int64_t j, std::int64_t k) {
    auto m = [p](std::int64_t v) { return static_cast<elem_t>(((v % p) + p) % p); };
    return (m(i) * p + m(j)) * p + m(k);
}

std::array<std::uint32_t, 3> heisenberg_coords(std::uint32_t p, elem_t g) {
    return {g / (p * p), (g / p) % p, g % p};
}

GroupPtr heisenberg(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("heisenberg group needs a prime, got " + std::to_string(p));
    std::size_t n = static_cast<std::size_t>(p) * p * p;
    std::vector<elem_t> mul(n * n);
    std::vector<std::string> labels(n);
    for (elem_t a = 0; a < n; ++a) {
        auto [i, j, k] = heisenberg_coords(p, a);
        labels[a] = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        for (elem_t b = 0; b < n; ++b) {
            auto [r, s, t] = heisenberg_coords(p, b);
            mul[a * n + b] = heisenberg_index(p, i + r, j + s,
                                              static_cast<std::int64_t>(k) + t - static_cast<std::int64_t>(r) * j);
        }
    }
    return std::make_shared<GroupTable>("heisenberg:" + std::to_string(p), n, std::move(mul), std::move(labels));
}

GroupHom heisenberg_projection_a(const GroupPtr& h, std::uint32_t p) {
    GroupHom pi{h, cyclic(p), {}};
    for (elem_t g = 0; g < h->order(); ++g) pi.image.push_back(heisenberg_coords(p, g)[1]);
    return pi;
}

GroupHom heisenberg_projection_b(const GroupPtr& h, std::uint32_t p) {
    GroupHom pi{h, cyclic(p), {}};
    for (elem_t g = 0; g < h->order(); ++g) pi.image.push_back(heisenberg_coords(p, g)[0]);
    return pi;
}

std::vector<std::pair<unsigned, unsigned>> unipotent_positions(unsigned n, bool bar) {
    std::vector<std::pair<unsigned, unsigned>> pos;
    for (unsigned i = 1; i <= n + 1; ++i)
        for (unsigned j = i + 1; j <= n + 1; ++j)
            if (!(bar && i == 1 && j == n + 1)) pos.emplace_back(i, j);
    return pos;
}

std::vector<std::uint32_t> unipotent_digits(std::size_t count, std::uint32_t p, elem_t g) {
    std::vector<std::uint32_t> d(count);
    for (auto& x : d) {
        x = g % p;
        g /= p;
    }
    return d;
}

namespace {

GroupPtr build_unipotent(unsigned n, std::uint32_t p, bool bar) {
    if (!is_prime(p)) throw std::invalid_argument("unipotent group needs a prime");
    if (n == 0) throw std::invalid_argument("unipotent group needs n >= 1");
    auto pos = unipotent_positions(n, bar);
    std::size_t order = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        order *= p;
        if (order > kMaxTableOrder)
            throw std::length_error("U_" + std::to_string(n + 1) + "(F_" + std::to_string(p) +
                                    ") exceeds table limit " + std::to_string(kMaxTableOrder));
    }
    const unsigned N = n + 1;
    auto to_matrix = [&](elem_t g) {
        std::vector<std::uint32_t> m(N * N, 0);
        for (unsigned i = 0; i < N; ++i) m[i * N + i] = 1;
        auto d = unipotent_digits(pos.size(), p, g);
        for (std::size_t q = 0; q < pos.size(); ++q) m[(pos[q].first - 1) * N + pos[q].second - 1] = d[q];
        return m;
    };
    std::vector<std::vector<std::uint32_t>> mats(order);
    for (elem_t g = 0; g < order; ++g) mats[g] = to_matrix(g);
    std::vector<elem_t> mul(order * order);
    std::vector<std::string> labels(order);
    for (elem_t a = 0; a < order; ++a) {
        std::string l = "[";
        auto d = unipotent_digits(pos.size(), p, a);
        for (std::size_t q = 0; q < d.size(); ++q) l += (q ? "," : "") + std::to_string(d[q]);
        labels[a] = l + "]";
        for (elem_t b = 0; b < order; ++b) {
            elem_t code = 0, place = 1;
            for (std::size_t q = 0; q < pos.size(); ++q) {
                unsigned i = pos[q].first - 1, j = pos[q].second - 1;
                std::uint64_t acc = 0;
                for (unsigned k = i; k <= j; ++k) acc += static_cast<std::uint64_t>(mats[a][i * N + k]) * mats[b][k * N + j];
                code += static_cast<elem_t>(acc % p) * place;
                place *= p;
            }
            mul[static_cast<std::size_t>(a) * order + b] = code;
        }
    }
    std::string name = std::string(bar ? "ubar:" : "u:") + std::to_string(N) + "," + std::to_string(p);
    return std::make_shared<GroupTable>(name, order, std::move(mul), std::move(labels));
}

}  // namespace

GroupPtr unipotent(unsigned n, std::uint32_t p) { return build_unipotent(n, p, false); }
GroupPtr unipotent_bar(unsigned n, std::uint32_t p) { return build_unipotent(n, p, true); }

GroupHom unipotent_corner_projection(unsigned n, std::uint32_t p, const GroupPtr& u, const GroupPtr& ubar) {
    auto full = unipotent_positions(n, false);
    auto bar = unipotent_positions(n, true);
    GroupHom pi{u, ubar, {}};
    for (elem_t g = 0; g < u->order(); ++g) {
        auto d = unipotent_digits(full.size(), p, g);
        elem_t code = 0, place = 1;
        for (std::size_t q = 0; q < full.size(); ++q) {
            if (full[q] == std::make_pair(1u, n + 1)) continue;
            code += d[q] * place;
            place *= p;
        }
        pi.image.push_back(code);
    }
    (void)bar;
    return pi;
}

// ---------------------------------------------------------------- subgroups

Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<elem_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::vector<std::int64_t> index(g->order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<std::int64_t>(i);
    std::size_t n = elements.size();
    std::vector<elem_t> mul(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = g->label(elements[a]);
        for (std::size_t b = 0; b < n; ++b) {
            auto c = index[g->mul(elements[a], elements[b])];
            if (c < 0) throw std::invalid_argument("element set is not closed under multiplication");
            mul[a * n + b] = static_cast<elem_t>(c);
        }
    }
    std::ostringstream name;
    name << "sub(" << g->name() << ";" << n << ")";
    auto table = std::make_shared<GroupTable>(name.str(), n, std::move(mul), std::move(labels));
    return {table, g, std::move(elements)};
}

Subgroup subgroup(const GroupPtr& g, const std::vector<elem_t>& generators) {
    std::vector<char> in(g->order(), 0);
    std::vector<elem_t> elems{g->identity()};
    in[g->identity()] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto s : generators) {
            if (s >= g->order()) throw std::out_of_range("generator index");
            auto x = g->mul(elems[i], s);
            if (!in[x]) {
                in[x] = 1;
                elems.push_back(x);
            }
        }
    return subgroup_from_elements(g, std::move(elems));
}

Subgroup center(const GroupPtr& g) {
    std::vector<elem_t> z;
    for (elem_t a = 0; a < g->order(); ++a) {
        bool central = true;
        for (elem_t b = 0; b < g->order() && central; ++b) central = g->commutes(a, b);
        if (central) z.push_back(a);
    }
    return subgroup_from_elements(g, std::move(z));
}

Subgroup derived_subgroup(const GroupPtr& g) {
    std::vector<elem_t> comms;
    for (elem_t a = 0; a < g->order(); ++a)
        for (elem_t b = 0; b < g->order(); ++b) comms.push_back(g->mul(g->mul(g->inv(a), g->inv(b)), g->mul(a, b)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return subgroup(g, comms);
}

std::pair<GroupPtr, GroupHom> quotient_by_central(const GroupPtr& g, elem_t z) {
    for (elem_t b = 0; b < g->order(); ++b)
        if (!g->commutes(z, b)) throw std::invalid_argument("quotient_by_central: element is not central");
    std::vector<elem_t> zs;
    for (elem_t x = g->identity();;) {
        zs.push_back(x);
        x = g->mul(x, z);
        if (x == g->identity()) break;
    }
    std::vector<std::int64_t> coset(g->order(), -1);
    std::vector<elem_t> reps;
    for (elem_t a = 0; a < g->order(); ++a) {
        if (coset[a] >= 0) continue;
        for (auto x : zs) coset[g->mul(a, x)] = static_cast<std::int64_t>(reps.size());
        reps.push_back(a);
    }
    std::size_t n = reps.size();
    std::vector<elem_t> mul(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = g->label(reps[a]) + "<z>";
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<elem_t>(coset[g->mul(reps[a], reps[b])]);
    }
    auto q = std::make_shared<GroupTable>(g->name() + "/<" + g->label(z) + ">", n, std::move(mul), std::move(labels));
    GroupHom pi{g, q, {}};
    for (elem_t a = 0; a < g->order(); ++a) pi.image.push_back(static_cast<elem_t>(coset[a]));
    return {q, pi};
}

std::vector<elem_t> generating_set(const GroupTable& g) {
    std::vector<char> in(g.order(), 0);
    std::vector<elem_t> elems{g.identity()}, gens;
    in[g.identity()] = 1;
    auto close = [&]() {
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (auto s : gens) {
                auto x = g.mul(elems[i], s);
                if (!in[x]) {
                    in[x] = 1;
                    elems.push_back(x);
                }
            }
    };
    // Prefer elements of large order: fewer generators, smaller searches.
    std::vector<elem_t> cand(g.order());
    std::iota(cand.begin(), cand.end(), 0);
    std::stable_sort(cand.begin(), cand.end(),
                     [&](elem_t a, elem_t b) { return g.element_order(a) > g.element_order(b); });
    for (auto c : cand) {
        if (in[c]) continue;
        gens.push_back(c);
        close();
        if (elems.size() == g.order()) break;
    }
    return gens;
}

std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h) {
    if (g->order() != h->order()) return std::nullopt;
    if (g->order() > 64) throw std::length_error("isomorphism search limited to order <= 64");
    const auto n = g->order();
    auto gens = generating_set(*g);
    std::vector<std::size_t> horders(n);
    for (elem_t x = 0; x < n; ++x) horders[x] = h->element_order(x);
    std::vector<elem_t> choice(gens.size());

    auto try_extend = [&]() -> std::optional<GroupHom> {
        std::vector<std::int64_t> img(n, -1);
        img[g->identity()] = h->identity();
        std::deque<elem_t> queue{g->identity()};
        while (!queue.empty()) {
            elem_t x = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < gens.size(); ++s) {
                elem_t y = g->mul(x, gens[s]);
                auto want = h->mul(static_cast<elem_t>(img[x]), choice[s]);
                if (img[y] < 0) {
                    img[y] = want;
                    queue.push_back(y);
                } else if (static_cast<elem_t>(img[y]) != want) {
                    return std::nullopt;
                }
            }
        }
        GroupHom f{g, h, {}};
        for (auto v : img) f.image.push_back(static_cast<elem_t>(v));
        if (!f.is_injective()) return std::nullopt;
        return f;
    };

    std::function<std::optional<GroupHom>(std::size_t)> search = [&](std::size_t k) -> std::optional<GroupHom> {
        if (k == gens.size()) return try_extend();
        auto ord = g->element_order(gens[k]);
        for (elem_t y = 0; y < n; ++y) {
            if (horders[y] != ord) continue;
            choice[k] = y;
            if (auto f = search(k + 1)) return f;
        }
        return std::nullopt;
    };
    return search(0);
}

// ---------------------------------------------------------------- specifier parsing

namespace {

struct Factor {
    std::string name;
    std::size_t pos;
    std::vector<std::pair<std::uint64_t, std::size_t>> args;  // value, position
};

std::vector<Factor> split_factors(std::string_view s, std::size_t base) {
    std::vector<Factor> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t start = i;
        while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i == start) throw SpecParseError(base + start, "expected a group name");
        Factor f{std::string(s.substr(start, i - start)), base + start, {}};
        if (i >= s.size() || s[i] != ':') throw SpecParseError(base + i, "expected ':' after '" + f.name + "'");
        ++i;
        for (;;) {
            std::size_t ds = i;
            std::uint64_t v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
                if (v > (1ull << 32)) throw SpecParseError(base + ds, "integer too large");
                ++i;
            }
            if (i == ds) throw SpecParseError(base + ds, "expected an integer");
            f.args.emplace_back(v, base + ds);
            if (i == s.size()) break;
            if (s[i] != ',') throw SpecParseError(base + i, std::string("unexpected character '") + s[i] + "'");
            ++i;
            if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) break;
        }
        out.push_back(std::move(f));
        if (i >= s.size()) break;
    }
    return out;
}

std::uint32_t prime_arg(const Factor& f, std::size_t k) {
    auto [v, pos] = f.args[k];
    if (!is_prime(v)) throw SpecParseError(pos, std::to_string(v) + " is not prime");
    return static_cast<std::uint32_t>(v);
}

void expect_args(const Factor& f, std::size_t n) {
    if (f.args.size() != n)
        throw SpecParseError(f.pos, "'" + f.name + "' takes " + std::to_string(n) + " argument(s), got " +
                                        std::to_string(f.args.size()));
}

GroupPtr build_factor(const Factor& f) {
    if (f.name == "cyclic") {
        expect_args(f, 1);
        if (f.args[0].first == 0) throw SpecParseError(f.args[0].second, "cyclic order must be positive");
        return cyclic(f.args[0].first);
    }
    if (f.name == "heisenberg") {
        expect_args(f, 1);
        return heisenberg(prime_arg(f, 0));
    }
    if (f.name == "u" || f.name == "ubar") {
        expect_args(f, 2);
        auto size = f.args[0].first;
        if (size < 2) throw SpecParseError(f.args[0].second, "matrix size must be at least 2");
        auto p = prime_arg(f, 1);
        return f.name == "u" ? unipotent(static_cast<unsigned>(size - 1), p)
                             : unipotent_bar(static_cast<unsigned>(size - 1), p);
    }
    if (f.name == "elem") {
        expect_args(f, 2);
        return elementary_abelian(prime_arg(f, 0), static_cast<unsigned>(f.args[1].first));
    }
    throw SpecParseError(f.pos, "unknown group '" + f.name + "'");
}

std::uint32_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return static_cast<std::uint32_t>(d);
    return n < 2 ? 2u : static_cast<std::uint32_t>(n);
}

}  // namespace

GroupPtr parse_group_spec(std::string_view spec) {
    constexpr std::string_view prod = "prod:";
    if (spec.substr(0, prod.size()) == prod) {
        auto factors = split_factors(spec.substr(prod.size()), prod.size());
        if (factors.size() < 2) throw SpecParseError(prod.size(), "prod needs at least two factors");
        GroupPtr g = build_factor(factors[0]);
        for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, build_factor(factors[i]));
        return g;
    }
    auto factors = split_factors(spec, 0);
    if (factors.size() != 1) throw SpecParseError(factors[1].pos, "several factors need the 'prod:' prefix");
    return build_factor(factors[0]);
}

std::uint32_t default_prime(std::string_view spec) {
    constexpr std::string_view prod = "prod:";
    std::size_t base = 0;
    if (spec.substr(0, prod.size()) == prod) {
        spec = spec.substr(prod.size());
        base = prod.size();
    }
    auto f = split_factors(spec, base).front();
    if (f.name == "cyclic") return smallest_prime_factor(f.args.at(0).first);
    if (f.name == "heisenberg" || f.name == "elem") return prime_arg(f, 0);
    if (f.name == "u" || f.name == "ubar") return prime_arg(f, 1);
    throw SpecParseError(f.pos, "unknown group '" + f.name + "'");
}

}  // namespace masseykit
