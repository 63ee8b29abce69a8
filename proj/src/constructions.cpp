#include "loopcond/constructions.hpp"

#include <algorithm>
#include <set>

#include "loopcond/error.hpp"

namespace loopcond {

auto Report::all_pass() const -> bool
{
    return std::all_of(checks.begin(), checks.end(), [](const Check & c) { return c.pass; });
}

auto to_json(const Report & r) -> nlohmann::json
{
    auto checks = nlohmann::json::array();
    for (const auto & c : r.checks) {
        nlohmann::json entry{{"name", c.name}, {"pass", c.pass}};
        if (!c.witness.is_null())
            entry["witness"] = c.witness;
        checks.push_back(std::move(entry));
    }
    return {{"checks", checks}, {"all_pass", r.all_pass()}};
}

auto walk_relation(const DiGraph & g, int k) -> DiGraph
{
    if (k < 1)
        throw InvalidArgument("walk length must be positive");
    auto result = g;
    for (int i = 1; i < k; ++i)
        result = compose(result, g);
    return result;
}

auto walk_gadget(int k) -> Gadget
{
    if (k < 1)
        throw InvalidArgument("walk length must be positive");
    Gadget gadget{.vertex_count = k + 1, .edges = {}, .distinguished = {0, k}, .slot_count = 1};
    for (int i = 0; i < k; ++i)
        gadget.edges.push_back({0, i, i + 1});
    return gadget;
}

namespace {

class GadgetBuilder
{
public:
    explicit GadgetBuilder(int slots) { _gadget.slot_count = slots; }

    auto vertex() -> int { return _gadget.vertex_count++; }

    void edge(int type, int a, int b) { _gadget.edges.push_back({type, a, b}); }

    // Conjunct R(u,v,x,y) over slot 0, with fresh witnesses x_1..x_{n-2}, w.
    void r_conjunct(int u, int v, int x, int y, int n)
    {
        std::vector<int> xs;
        for (int i = 0; i < n - 2; ++i)
            xs.push_back(vertex());
        int w = vertex();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                edge(0, xs[i], xs[j]);
            for (int other : {x, y, v, w})
                edge(0, xs[i], other);
        }
        edge(0, u, w);
        edge(0, w, x);
        edge(0, v, y);
    }

    auto finish(std::vector<int> distinguished) -> Gadget
    {
        _gadget.distinguished = std::move(distinguished);
        _gadget.validate();
        return std::move(_gadget);
    }

private:
    Gadget _gadget;
};

void require_clique_args(const DiGraph & g, int n)
{
    if (n < 3)
        throw InvalidArgument("the clique construction needs n >= 3");
    if (!is_symmetric(g))
        throw NotSymmetric("the clique construction needs a symmetric graph; take symmetric_part first");
}

void require_n(int n)
{
    if (n < 3)
        throw InvalidArgument("the clique construction needs n >= 3");
}

} // namespace

auto clique_r_gadget(int n) -> Gadget
{
    require_n(n);
    GadgetBuilder b(1);
    int u = b.vertex(), v = b.vertex(), x = b.vertex(), y = b.vertex();
    b.r_conjunct(u, v, x, y, n);
    return b.finish({u, v, x, y});
}

auto clique_f_gadget(int n) -> Gadget
{
    require_n(n);
    GadgetBuilder b(1);
    int u = b.vertex(), x = b.vertex(), y = b.vertex();
    b.r_conjunct(u, u, x, y, n);
    return b.finish({x, y});
}

auto clique_s_gadget(int n) -> Gadget
{
    require_n(n);
    GadgetBuilder b(2);
    int u1 = b.vertex(), u2 = b.vertex(), v1 = b.vertex(), v2 = b.vertex();
    std::vector<int> xs;
    for (int i = 0; i < n + 1; ++i)
        xs.push_back(b.vertex());
    for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n + 1; ++j) {
            if (i == j)
                continue;
            int lo = std::min(i, j), hi = std::max(i, j);
            if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3))
                continue;
            b.edge(1, xs[i], xs[j]);
        }
    b.r_conjunct(u1, v1, xs[0], xs[1], n);
    b.r_conjunct(u2, v2, xs[2], xs[3], n);
    return b.finish({u1, u2, v1, v2});
}

auto clique_R(const DiGraph & g, int n) -> Relation
{
    require_clique_args(g, n);
    const DiGraph inputs[] = {g};
    return evaluate(clique_r_gadget(n), inputs);
}

auto clique_F(const DiGraph & g, int n) -> DiGraph
{
    auto r = clique_R(g, n);
    std::vector<DiGraph::Edge> edges;
    for (const auto & t : r.tuples())
        if (t[0] == t[1])
            edges.emplace_back(t[2], t[3]);
    return DiGraph(g.size(), std::move(edges), g.labels());
}

auto clique_Q(const DiGraph & g, int n) -> DiGraph
{
    auto f = clique_F(g, n);
    const DiGraph inputs[] = {g, f};
    auto s = evaluate(clique_s_gadget(n), inputs);
    return pp_power(s, 2).to_graph();
}

auto verify_cycle_reduction(int k, int size_cap) -> Report
{
    if (k < 3 || k % 2 == 0)
        throw InvalidArgument("cycle reduction needs an odd k >= 3");
    if (k * k > size_cap)
        throw SizeCap("k^2 = " + std::to_string(k * k) + " exceeds the size cap " + std::to_string(size_cap));

    Report report;
    auto big = cycle(k * k);

    auto hom = find_hom(big, cycle(k + 2));
    report.checks.push_back({"square_cycle_maps_to_next_odd_cycle", hom.has_value(),
        hom ? nlohmann::json(hom->map) : nlohmann::json()});

    auto walks = walk_relation(big, k);
    std::vector<int> spaced;
    std::vector<int> missing;
    for (int i = 0; i < k; ++i)
        spaced.push_back(i * k);
    for (int i = 0; i < k; ++i) {
        int a = spaced[i], b = spaced[(i + 1) % k];
        if (!walks.has_edge(a, b) || !walks.has_edge(b, a))
            missing.push_back(a);
    }
    report.checks.push_back({"walk_graph_contains_spaced_cycle", missing.empty(),
        missing.empty() ? nlohmann::json(spaced) : nlohmann::json{{"missing_from", missing}}});

    std::vector<int> looped;
    for (auto [a, b] : walks.edges())
        if (a == b)
            looped.push_back(a);
    report.checks.push_back({"walk_graph_loopless", looped.empty(), looped.empty() ? nlohmann::json() : nlohmann::json(looped)});

    const DiGraph inputs[] = {big};
    auto via_gadget = evaluate(walk_gadget(k), inputs);
    report.checks.push_back({"walk_graph_matches_path_gadget", Relation::from_graph(walks) == via_gadget,
        nlohmann::json{{"edges", walks.edge_count()}}});
    return report;
}

namespace {

auto pairs_json(const std::vector<Tuple> & tuples) -> nlohmann::json
{
    return tuples.empty() ? nlohmann::json() : nlohmann::json{{"counterexamples", tuples}};
}

} // namespace

auto verify_clique_claims(int n, int cap) -> Report
{
    if (n < 3)
        throw InvalidArgument("clique claims need n >= 3");
    if (n > cap)
        throw SizeCap("n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));

    Report report;
    auto kn = clique(n);
    auto r = clique_R(kn, n);
    auto f = clique_F(kn, n);

    {
        std::vector<Tuple> bad;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !f.has_edge(i, j))
                    bad.push_back({i, j});
        report.checks.push_back({"F_relates_distinct_clique_vertices", bad.empty(), pairs_json(bad)});
    }

    report.checks.push_back({"F_symmetric", is_symmetric(f), nlohmann::json()});
    report.checks.push_back({"F_on_clique_equals_clique", f == kn, nlohmann::json{{"F_edges", f.edge_count()}}});

    {
        const DiGraph inputs[] = {kn};
        auto direct = Relation::from_graph(f) == evaluate(clique_f_gadget(n), inputs);
        report.checks.push_back({"F_projection_matches_F_gadget", direct, nlohmann::json()});
    }

    {
        // (a): u != v and x = y != v.
        std::vector<Tuple> bad;
        int checked = 0;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                for (int x = 0; x < n; ++x)
                    if (u != v && x != v) {
                        ++checked;
                        if (!r.contains({u, v, x, x}))
                            bad.push_back({u, v, x, x});
                    }
        report.checks.push_back({"R_case_a_sufficient", bad.empty(),
            bad.empty() ? nlohmann::json{{"tuples_checked", checked}} : pairs_json(bad)});
    }

    {
        // (b): u = v, x = u, y != x.
        std::vector<Tuple> bad;
        int checked = 0;
        for (int u = 0; u < n; ++u)
            for (int y = 0; y < n; ++y)
                if (y != u) {
                    ++checked;
                    if (!r.contains({u, u, u, y}))
                        bad.push_back({u, u, u, y});
                }
        report.checks.push_back({"R_case_b_sufficient", bad.empty(),
            bad.empty() ? nlohmann::json{{"tuples_checked", checked}} : pairs_json(bad)});
    }

    auto q = clique_Q(kn, n);
    {
        std::vector<Tuple> bad;
        int vertices = n * n;
        for (int p = 0; p < vertices; ++p)
            for (int s = 0; s < vertices; ++s)
                if (p != s && !q.has_edge(p, s))
                    bad.push_back({p / n, p % n, s / n, s % n});
        bool big_enough = n * n >= n + 1;
        report.checks.push_back({"Q_clique_on_distinct_pairs", bad.empty() && big_enough,
            bad.empty() ? nlohmann::json{{"clique_size", vertices}, {"needed", n + 1}} : pairs_json(bad)});
    }

    report.checks.push_back({"Q_loopless_on_clique", !has_loop(q), nlohmann::json()});

    // On K_{n+1} the gadgets do acquire loops; unfold them.
    auto larger = clique(n + 1);
    auto f_larger = clique_F(larger, n);
    {
        std::vector<int> looped;
        for (int a = 0; a < n + 1; ++a)
            if (f_larger.has_edge(a, a))
                looped.push_back(a);
        report.checks.push_back({"F_loop_on_larger_clique", static_cast<int>(looped.size()) == n + 1,
            nlohmann::json{{"looped_vertices", looped}}});
    }

    {
        // F(a,a) is witnessed by u, w, x_1..x_{n-2} and a itself; they must be
        // n+1 pairwise adjacent vertices.
        const DiGraph inputs[] = {larger};
        auto gadget = clique_f_gadget(n);
        auto witness = find_witness(gadget, inputs, {0, 0});
        bool ok = false;
        nlohmann::json detail;
        if (witness) {
            std::set<int> image;
            for (int v = 0; v < gadget.vertex_count; ++v)
                image.insert((*witness)[v]);
            bool pairwise = true;
            for (int a : image)
                for (int b : image)
                    if (a != b && !larger.has_edge(a, b))
                        pairwise = false;
            ok = pairwise && static_cast<int>(image.size()) == n + 1;
            detail = {{"assignment", *witness}, {"distinct_images", image.size()}};
        }
        report.checks.push_back({"F_loop_unfolds_to_larger_clique", ok, detail});
    }

    {
        // A loop of Q at (0,1) gives x_1..x_{n+1} pairwise F-related.
        const DiGraph inputs[] = {larger, f_larger};
        auto gadget = clique_s_gadget(n);
        auto witness = find_witness(gadget, inputs, {0, 1, 0, 1});
        bool ok = false;
        nlohmann::json detail;
        if (witness) {
            std::vector<int> xs(witness->begin() + 4, witness->begin() + 4 + n + 1);
            ok = true;
            for (int i = 0; i < n + 1; ++i)
                for (int j = 0; j < n + 1; ++j)
                    if (i != j && !f_larger.has_edge(xs[i], xs[j]))
                        ok = false;
            detail = {{"x", xs}};
        }
        report.checks.push_back({"Q_loop_unfolds_to_F_clique", ok, detail});
    }

    return report;
}

} // namespace loopcond
