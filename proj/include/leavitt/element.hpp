#ifndef LEAVITT_ELEMENT_HPP
#define LEAVITT_ELEMENT_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leavitt/graph.hpp"
#include "leavitt/linalg.hpp"
#include "leavitt/ring.hpp"

namespace leavitt {

/// coeff * alpha * beta^* with r(alpha) = r(beta).
struct Monomial {
    RingElem coeff;
    Path alpha;
    Path beta;
};

namespace detail {

using MonoKey = std::pair<Path, Path>;

/// Canonical monomial order: |alpha|+|beta|, then alpha, then beta.
struct MonoKeyLess {
    bool operator()(const MonoKey& x, const MonoKey& y) const {
        const size_t dx = x.first.edges.size() + x.second.edges.size();
        const size_t dy = y.first.edges.size() + y.second.edges.size();
        if (dx != dy) return dx < dy;
        if (x.first != y.first) return path_less(x.first, y.first);
        return path_less(x.second, y.second);
    }
};

using TermMap = std::map<MonoKey, RingElem, MonoKeyLess>;
using WorkSet = std::set<MonoKey, MonoKeyLess>;

/// A monomial is reducible when alpha and beta both end in the designated
/// edge of its source vertex.
inline bool reducible(const Graph& g, const MonoKey& k) {
    if (k.first.edges.empty() || k.second.edges.empty()) return false;
    const int e = k.first.edges.back();
    return e == k.second.edges.back() && g.designated_edge(g.edge(e).src) == e;
}

inline void accumulate(TermMap& acc, WorkSet& work, MonoKey key, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) {
            acc.erase(it);
            work.erase(key);
            return;
        }
    }
    work.insert(std::move(key));
}

/// Rewrites a raw linear combination to the canonical normal form:
/// whenever alpha = alpha'd and beta = beta'd for the designated edge d of v,
///   alpha beta^*  ->  alpha'beta'^*  -  sum over other out-edges f of v of
///   (alpha'f)(beta'f)^*.
/// Each step shortens the degree by 2 or replaces the terminal pair (d, d)
/// by a strictly smaller (f, f), so the rewrite terminates; the result is
/// order-independent (exercised by the confluence tests via order_rng).
inline std::vector<Monomial> reduce_terms(const Graph& g, std::vector<Monomial> raw,
                                          std::mt19937* order_rng = nullptr) {
    TermMap acc;
    WorkSet work;
    for (auto& m : raw)
        accumulate(acc, work, MonoKey{std::move(m.alpha), std::move(m.beta)}, m.coeff);

    while (!work.empty()) {
        auto it = work.begin();
        if (order_rng) {
            std::uniform_int_distribution<size_t> pick(0, work.size() - 1);
            std::advance(it, pick(*order_rng));
        }
        const MonoKey key = *it;
        work.erase(it);
        if (!reducible(g, key)) continue;
        auto found = acc.find(key);
        if (found == acc.end()) continue;

        const RingElem c = found->second;
        acc.erase(found);

        const int d = key.first.edges.back();
        const int v = g.edge(d).src;
        MonoKey base = key;
        base.first.edges.pop_back();
        base.second.edges.pop_back();
        accumulate(acc, work, base, c);
        for (int f : g.out_edges(v)) {
            if (f == d) continue;
            MonoKey split = base;
            split.first.edges.push_back(f);
            split.second.edges.push_back(f);
            accumulate(acc, work, std::move(split), -c);
        }
    }

    std::vector<Monomial> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc) out.push_back(Monomial{c, k.first, k.second});
    return out;
}

/// Remainder of q after removing prefix p, or nullopt when p is not a
/// prefix of q (empty paths compare by base vertex).
inline std::optional<Path> strip_prefix(const Graph& g, const Path& p, const Path& q) {
    if (p.base != q.base || p.edges.size() > q.edges.size()) return std::nullopt;
    if (!std::equal(p.edges.begin(), p.edges.end(), q.edges.begin())) return std::nullopt;
    Path rest;
    rest.base = path_range(g, p);
    rest.edges.assign(q.edges.begin() + static_cast<long>(p.edges.size()), q.edges.end());
    return rest;
}

} // namespace detail

/// Canonical-form member of L_R(E): a reduced R-linear combination of
/// monomials alpha beta^*. Immutable; equality is structural.
class Element {
public:
    Element(std::shared_ptr<const Graph> graph, RingSpec ring, std::vector<Monomial> raw_terms,
            std::mt19937* order_rng = nullptr)
        : graph_(require_graph(std::move(graph))), ring_(std::move(ring)),
          terms_(detail::reduce_terms(*graph_, validate(std::move(raw_terms)), order_rng)) {}

    static Element zero(std::shared_ptr<const Graph> g, RingSpec ring) {
        return Element(std::move(g), std::move(ring), {});
    }

    /// Multiplicative unit: the sum of all vertices (graphs here are finite).
    static Element one(std::shared_ptr<const Graph> g, RingSpec ring) {
        std::vector<Monomial> terms;
        for (int v = 0; v < g->num_vertices(); ++v)
            terms.push_back(Monomial{RingElem::one(ring), Path::at_vertex(v), Path::at_vertex(v)});
        return Element(std::move(g), std::move(ring), std::move(terms));
    }

    const std::shared_ptr<const Graph>& graph() const { return graph_; }
    const RingSpec& ring() const { return ring_; }
    const std::vector<Monomial>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool operator==(const Element& other) const {
        if (!compatible(other) || terms_.size() != other.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff != other.terms_[i].coeff ||
                terms_[i].alpha != other.terms_[i].alpha || terms_[i].beta != other.terms_[i].beta)
                return false;
        }
        return true;
    }
    bool operator!=(const Element& other) const { return !(*this == other); }

    Element operator+(const Element& other) const {
        check_compatible(other);
        std::vector<Monomial> raw = terms_;
        raw.insert(raw.end(), other.terms_.begin(), other.terms_.end());
        return Element(graph_, ring_, std::move(raw));
    }

    Element operator-() const {
        std::vector<Monomial> raw = terms_;
        for (auto& m : raw) m.coeff = -m.coeff;
        return Element(graph_, ring_, std::move(raw));
    }

    Element operator-(const Element& other) const { return *this + (-other); }

    /// Product via the monomial rule (alpha beta^*)(gamma delta^*):
    /// alpha gamma' delta^* if gamma = beta gamma', alpha (delta beta')^* if
    /// beta = gamma beta', zero otherwise; then reduce.
    Element operator*(const Element& other) const {
        check_compatible(other);
        std::vector<Monomial> raw;
        for (const auto& m1 : terms_) {
            for (const auto& m2 : other.terms_) {
                const RingElem c = m1.coeff * m2.coeff;
                if (auto rest = detail::strip_prefix(*graph_, m1.beta, m2.alpha)) {
                    raw.push_back(Monomial{c, path_concat(*graph_, m1.alpha, *rest), m2.beta});
                } else if (auto tail = detail::strip_prefix(*graph_, m2.alpha, m1.beta)) {
                    raw.push_back(Monomial{c, m1.alpha, path_concat(*graph_, m2.beta, *tail)});
                }
            }
        }
        return Element(graph_, ring_, std::move(raw));
    }

    Element scaled(const RingElem& r) const {
        if (r.spec() != ring_)
            throw precondition_error("scalar from a different ring");
        std::vector<Monomial> raw = terms_;
        for (auto& m : raw) m.coeff = r * m.coeff;
        return Element(graph_, ring_, std::move(raw));
    }

    bool compatible(const Element& other) const {
        return ring_ == other.ring_ &&
               (graph_ == other.graph_ || graph_->same_structure(*other.graph_));
    }

    void check_compatible(const Element& other) const {
        if (!compatible(other))
            throw precondition_error("elements live in different algebras");
    }

private:
    static std::shared_ptr<const Graph> require_graph(std::shared_ptr<const Graph> g) {
        if (!g) throw precondition_error("element requires a graph");
        return g;
    }

    std::vector<Monomial> validate(std::vector<Monomial> terms) const {
        for (const auto& m : terms) {
            if (m.coeff.spec() != ring_)
                throw precondition_error("monomial coefficient from a different ring");
            if (!path_valid(*graph_, m.alpha) || !path_valid(*graph_, m.beta))
                throw precondition_error("monomial path not valid in this graph");
            if (path_range(*graph_, m.alpha) != path_range(*graph_, m.beta))
                throw precondition_error("monomial requires r(alpha) = r(beta)");
        }
        return terms;
    }

    std::shared_ptr<const Graph> graph_;
    RingSpec ring_;
    std::vector<Monomial> terms_;
};

inline Element operator*(const RingElem& r, const Element& x) { return x.scaled(r); }

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline Element vertex_elem(std::shared_ptr<const Graph> g, const RingSpec& ring, int v) {
    if (v < 0 || v >= g->num_vertices()) throw precondition_error("foreign vertex");
    Monomial m{RingElem::one(ring), Path::at_vertex(v), Path::at_vertex(v)};
    return Element(std::move(g), ring, {std::move(m)});
}

inline Element vertex_elem(const std::shared_ptr<const Graph>& g, const RingSpec& ring,
                           const std::string& id) {
    return vertex_elem(g, ring, g->vertex_index(id));
}

inline Element path_elem(std::shared_ptr<const Graph> g, const RingSpec& ring, const Path& p) {
    if (!path_valid(*g, p)) throw precondition_error("path not valid in this graph");
    Monomial m{RingElem::one(ring), p, Path::at_vertex(path_range(*g, p))};
    return Element(std::move(g), ring, {std::move(m)});
}

inline Element edge_elem(const std::shared_ptr<const Graph>& g, const RingSpec& ring, int e) {
    if (e < 0 || e >= g->num_edges()) throw precondition_error("foreign edge");
    return path_elem(g, ring, path_from_edge(*g, e));
}

inline Element edge_elem(const std::shared_ptr<const Graph>& g, const RingSpec& ring,
                         const std::string& id) {
    return edge_elem(g, ring, g->edge_index(id));
}

inline Element involute(const Element& x) {
    std::vector<Monomial> raw = x.terms();
    for (auto& m : raw) std::swap(m.alpha, m.beta);
    return Element(x.graph(), x.ring(), std::move(raw));
}

inline Element ghost_elem(const std::shared_ptr<const Graph>& g, const RingSpec& ring, int e) {
    return involute(edge_elem(g, ring, e));
}

inline Element ghost_elem(const std::shared_ptr<const Graph>& g, const RingSpec& ring,
                          const std::string& id) {
    return ghost_elem(g, ring, g->edge_index(id));
}

inline Element mono(std::shared_ptr<const Graph> g, const RingSpec& ring, const Path& alpha,
                    const Path& beta) {
    Monomial m{RingElem::one(ring), alpha, beta};
    return Element(std::move(g), ring, {std::move(m)});
}

inline Element mono(std::shared_ptr<const Graph> g, const RingSpec& ring, const RingElem& coeff,
                    const Path& alpha, const Path& beta) {
    Monomial m{coeff, alpha, beta};
    return Element(std::move(g), ring, {std::move(m)});
}

inline Element power(const Element& x, int n) {
    if (n < 0) throw precondition_error("power requires n >= 0");
    if (n == 0) return Element::one(x.graph(), x.ring());
    Element acc = x;
    for (int i = 1; i < n; ++i) acc = acc * x;
    return acc;
}

// ---------------------------------------------------------------------------
// Projections and partial unitaries
// ---------------------------------------------------------------------------

inline bool is_projection(const Element& p) { return p == p * p && p == involute(p); }

/// u^*u = uu^* = p for the projection p.
inline bool is_partial_unitary(const Element& u, const Element& p) {
    if (!is_projection(p)) return false;
    const Element ustar = involute(u);
    return ustar * u == p && u * ustar == p;
}

/// Laurent polynomial applied to a partial unitary: coefficients are
/// k_{lowest} ... k_{lowest + len - 1}; the constant term lands on p.
inline Element poly_apply(const std::vector<RingElem>& coeffs, int lowest_degree, const Element& u,
                          const Element& p) {
    if (!is_partial_unitary(u, p))
        throw precondition_error("poly_apply requires a partial unitary over p");
    Element acc = Element::zero(u.graph(), u.ring());
    const Element ustar = involute(u);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const int deg = lowest_degree + static_cast<int>(i);
        if (coeffs[i].is_zero()) continue;
        Element pw = deg == 0 ? p : deg > 0 ? power(u, deg) : power(ustar, -deg);
        acc = acc + coeffs[i] * pw;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Linear independence over R
// ---------------------------------------------------------------------------

/// Assembles the coefficient matrix of xs over the union of their canonical
/// monomials and tests the kernel. Normal-form monomials are linearly
/// independent over R, so this decides independence of the xs themselves.
inline bool linearly_independent(const std::vector<Element>& xs) {
    if (xs.empty()) return true;
    for (const auto& x : xs) xs.front().check_compatible(x);
    std::map<detail::MonoKey, int, detail::MonoKeyLess> row_of;
    for (const auto& x : xs)
        for (const auto& m : x.terms())
            row_of.emplace(detail::MonoKey{m.alpha, m.beta}, 0);
    if (row_of.empty()) return false; // only zero elements
    int next = 0;
    for (auto& [k, idx] : row_of) idx = next++;

    ExactMatrix mat(next, static_cast<int>(xs.size()), xs.front().ring());
    for (size_t j = 0; j < xs.size(); ++j)
        for (const auto& m : xs[j].terms())
            mat.set(row_of.at(detail::MonoKey{m.alpha, m.beta}), static_cast<int>(j), m.coeff);
    return kernel_is_trivial(mat);
}

/// Certifies q(u) != 0 for nonzero polynomials q of degree <= bound, by
/// checking {p, u, ..., u^bound} is linearly independent. Evidence up to
/// the bound only; full spectrum for all q is not decided here.
inline bool full_spectrum_up_to(const Element& u, const Element& p, int bound) {
    if (bound < 1) throw precondition_error("degree bound must be >= 1");
    if (!is_partial_unitary(u, p))
        throw precondition_error("full_spectrum_up_to requires a partial unitary over p");
    std::vector<Element> powers{p};
    Element acc = p;
    for (int n = 1; n <= bound; ++n) {
        acc = acc * u;
        powers.push_back(acc);
    }
    return linearly_independent(powers);
}

// ---------------------------------------------------------------------------
// Leavitt family verification
// ---------------------------------------------------------------------------

struct RelationFailure {
    int relation; // 1..5
    std::string instance;
};

struct FamilyReport {
    std::vector<RelationFailure> failures;
    int checks = 0;

    bool pass() const { return failures.empty(); }
};

/// Verifies relations (1)-(5) for candidate images {p_v}, {t_e} living in a
/// common target algebra. Failures are reported, not thrown.
inline FamilyReport family_check(const Graph& e_graph, const std::vector<Element>& p,
                                 const std::vector<Element>& t) {
    if (static_cast<int>(p.size()) != e_graph.num_vertices() ||
        static_cast<int>(t.size()) != e_graph.num_edges())
        throw precondition_error("family assignment must be total on vertices and edges");
    for (const auto& x : p) p.front().check_compatible(x);
    for (const auto& x : t) p.front().check_compatible(x);

    FamilyReport report;
    const auto target = p.empty() ? nullptr : p.front().graph();
    const Element zero = Element::zero(p.front().graph(), p.front().ring());

    auto expect = [&report](bool ok, int relation, const std::string& instance) {
        ++report.checks;
        if (!ok) report.failures.push_back(RelationFailure{relation, instance});
    };

    for (int v = 0; v < e_graph.num_vertices(); ++v) {
        for (int w = 0; w < e_graph.num_vertices(); ++w) {
            const Element prod = p[static_cast<size_t>(v)] * p[static_cast<size_t>(w)];
            const Element& want = v == w ? p[static_cast<size_t>(v)] : zero;
            expect(prod == want, 1,
                   e_graph.vertex_id(v) + "." + e_graph.vertex_id(w) +
                       (v == w ? " != " + e_graph.vertex_id(v) : " != 0"));
        }
    }
    for (int e = 0; e < e_graph.num_edges(); ++e) {
        const auto& te = t[static_cast<size_t>(e)];
        const Element test = involute(te);
        const auto& ps = p[static_cast<size_t>(e_graph.edge(e).src)];
        const auto& pr = p[static_cast<size_t>(e_graph.edge(e).dst)];
        const std::string id = e_graph.edge(e).id;
        expect(ps * te == te, 2, "s(" + id + ")." + id + " != " + id);
        expect(te * pr == te, 2, id + ".r(" + id + ") != " + id);
        expect(pr * test == test, 3, "r(" + id + ")." + id + "* != " + id + "*");
        expect(test * ps == test, 3, id + "*.s(" + id + ") != " + id + "*");
    }
    for (int e = 0; e < e_graph.num_edges(); ++e) {
        const Element test = involute(t[static_cast<size_t>(e)]);
        for (int f = 0; f < e_graph.num_edges(); ++f) {
            const Element prod = test * t[static_cast<size_t>(f)];
            const Element& want = e == f ? p[static_cast<size_t>(e_graph.edge(e).dst)] : zero;
            expect(prod == want, 4,
                   e_graph.edge(e).id + "*." + e_graph.edge(f).id +
                       (e == f ? " != r(" + e_graph.edge(e).id + ")" : " != 0"));
        }
    }
    for (int v : regular_vertices(e_graph)) {
        Element sum = zero;
        for (int f : e_graph.out_edges(v))
            sum = sum + t[static_cast<size_t>(f)] * involute(t[static_cast<size_t>(f)]);
        expect(sum == p[static_cast<size_t>(v)], 5,
               e_graph.vertex_id(v) + " != sum of f.f* over s(f)=" + e_graph.vertex_id(v));
    }
    (void)target;
    return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Terms joined by " + "/" - "; coefficient prefix "<c>*" omitted when 1;
/// real part as edge ids joined with ".", ghost part reversed with a "*"
/// suffix per edge; a vertex-only monomial renders as the vertex id.
inline std::string render(const Element& x) {
    if (x.is_zero()) return "0";
    const Graph& g = *x.graph();
    std::string out;
    bool first = true;
    for (const auto& m : x.terms()) {
        const bool neg = m.coeff.is_negative();
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const RingElem mag = neg ? -m.coeff : m.coeff;
        std::string body;
        if (m.alpha.edges.empty() && m.beta.edges.empty()) {
            body = g.vertex_id(m.alpha.base);
        } else {
            std::vector<std::string> parts;
            for (int e : m.alpha.edges) parts.push_back(g.edge(e).id);
            for (auto it = m.beta.edges.rbegin(); it != m.beta.edges.rend(); ++it)
                parts.push_back(g.edge(*it).id + "*");
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) body += ".";
                body += parts[i];
            }
        }
        if (!mag.is_one()) out += mag.str() + "*";
        out += body;
    }
    return out;
}

} // namespace leavitt

#endif
