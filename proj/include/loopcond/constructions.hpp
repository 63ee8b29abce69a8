#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "loopcond/graph.hpp"
#include "loopcond/ppdef.hpp"

namespace loopcond {

/// Named pass/fail checks with an optional witness or counterexample.
struct Report
{
    struct Check
    {
        std::string name;
        bool pass = false;
        nlohmann::json witness;
    };

    std::vector<Check> checks;

    [[nodiscard]] auto all_pass() const -> bool;
};

/// `{"checks": [{"name": str, "pass": bool, "witness": ...}], "all_pass": bool}`;
/// "witness" is omitted when a check has none.
[[nodiscard]] auto to_json(const Report & r) -> nlohmann::json;

/// Edge (x, y) iff g has a directed walk of exactly k edges from x to y.
[[nodiscard]] auto walk_relation(const DiGraph & g, int k) -> DiGraph;

/// A path of k single-slot edges with its endpoints distinguished.
[[nodiscard]] auto walk_gadget(int k) -> Gadget;

// The clique reduction works on a symmetric graph G and a size n >= 3:
//
//   R(u,v,x,y)  iff there are x_1..x_{n-2}, w with the x_i pairwise adjacent,
//               each x_i adjacent to x, y, v and w, and G(u,w), G(w,x), G(v,y);
//   F(x,y)      iff R(u,u,x,y) for some u;
//   S(u1,u2,v1,v2) iff there are x_1..x_{n+1} with F(x_i,x_j) for all i != j
//               except {1,2} and {3,4}, R(u1,v1,x1,x2) and R(u2,v2,x3,x4);
//   Q           is S read as a graph on pairs, (a,b) encoded as a*|V| + b.
//
// Gadget slots: R and F use slot 0 = G; S uses slot 0 = G and slot 1 = F.

[[nodiscard]] auto clique_r_gadget(int n) -> Gadget;
/// F written directly as a gadget over G (R with u and v merged, then projected).
[[nodiscard]] auto clique_f_gadget(int n) -> Gadget;
[[nodiscard]] auto clique_s_gadget(int n) -> Gadget;

/// Throws NotSymmetric, or InvalidArgument for n < 3.
[[nodiscard]] auto clique_R(const DiGraph & g, int n) -> Relation;
/// Diagonalises and projects clique_R.
[[nodiscard]] auto clique_F(const DiGraph & g, int n) -> DiGraph;
/// Graph on |V|^2 vertices.
[[nodiscard]] auto clique_Q(const DiGraph & g, int n) -> DiGraph;

/// Checks the graph facts behind "k-cycle implies (k+2)-cycle" for odd k >= 3:
/// C_{k^2} maps to C_{k+2}, and the k-step walk graph of C_{k^2} contains the
/// k-cycle on v_0, v_k, ..., v_{k(k-1)} and has no loop.
/// Throws InvalidArgument for bad k and SizeCap when k^2 > size_cap.
[[nodiscard]] auto verify_cycle_reduction(int k, int size_cap = 225) -> Report;

/// Brute-force checks of the R, F and Q gadget claims on K_n (and K_{n+1}
/// for the loop-unfolding checks). Throws InvalidArgument for n < 3 and
/// SizeCap for n > cap.
[[nodiscard]] auto verify_clique_claims(int n, int cap = 4) -> Report;

} // namespace loopcond
