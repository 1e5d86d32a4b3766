#pragma once

// Cech complexes of point clouds: a simplex enters at the radius of the
// minimal ball enclosing its vertices, so membership at scale r is an
// exact miniball test rather than a Vietoris-Rips proxy. Homology is
// computed over GF(2) by column reduction of the boundary matrices.

#include <algorithm>
#include <map>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/miniball.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

struct Simplex {
    std::vector<int> vertices;  // ascending
    double filtration = 0.0;    // miniball radius of the vertex set
};

struct SimplicialComplex {
    int vertex_count = 0;
    int max_dim = 0;
    std::vector<Simplex> simplices;  // sorted by (dim, filtration, vertices)
};

// Cech complex at scale r, up to max_dim. Edges need pairwise distance
// <= 2r; higher simplices need miniball radius <= r, grown as cliques of
// the edge graph (a miniball failure prunes every superset).
inline SimplicialComplex cech_complex(const PointCloud& S, double r, int max_dim = 2) {
    require(r >= 0.0, "scale must be nonnegative");
    require(max_dim >= 0, "max dimension must be nonnegative");
    const int n = S.size();
    require(n > 0, "empty point cloud");

    SimplicialComplex complex;
    complex.vertex_count = n;
    for (int i = 0; i < n; ++i) complex.simplices.push_back({{i}, 0.0});

    if (max_dim >= 1) {
        std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (dist(S.point(i), S.point(j)) <= 2.0 * r) {
                    nbrs[static_cast<std::size_t>(i)].push_back(j);
                    complex.simplices.push_back(
                        {{i, j}, 0.5 * dist(S.point(i), S.point(j))});
                    complex.max_dim = std::max(complex.max_dim, 1);
                }

        // extend cliques by common higher-index neighbors; reject once the
        // miniball outgrows r (monotone in the vertex set)
        std::vector<std::vector<int>> frontier;
        for (int i = 0; i < n; ++i)
            for (int j : nbrs[static_cast<std::size_t>(i)])
                frontier.push_back({i, j});
        for (int dim = 2; dim <= max_dim && !frontier.empty(); ++dim) {
            std::vector<std::vector<int>> next;
            for (const std::vector<int>& clique : frontier) {
                // candidates: higher-index neighbors of every clique vertex
                std::vector<int> cand = nbrs[static_cast<std::size_t>(clique[0])];
                for (std::size_t k = 1; k < clique.size() && !cand.empty(); ++k) {
                    const std::vector<int>& nk =
                        nbrs[static_cast<std::size_t>(clique[k])];
                    std::vector<int> kept;
                    std::set_intersection(cand.begin(), cand.end(), nk.begin(),
                                          nk.end(), std::back_inserter(kept));
                    cand = std::move(kept);
                }
                for (int v : cand) {
                    if (v <= clique.back()) continue;
                    std::vector<int> verts = clique;
                    verts.push_back(v);
                    const Ball ball = min_enclosing_ball(S, verts);
                    if (ball.radius <= r) {
                        complex.simplices.push_back({verts, ball.radius});
                        complex.max_dim = std::max(complex.max_dim, dim);
                        next.push_back(std::move(verts));
                    }
                }
            }
            frontier = std::move(next);
        }
    }

    std::sort(complex.simplices.begin(), complex.simplices.end(),
              [](const Simplex& a, const Simplex& b) {
                  if (a.vertices.size() != b.vertices.size())
                      return a.vertices.size() < b.vertices.size();
                  if (a.filtration != b.filtration) return a.filtration < b.filtration;
                  return a.vertices < b.vertices;
              });
    return complex;
}

struct BettiVector {
    std::vector<long> betti;  // betti[k] for k = 0 .. up_to_dim
};

namespace detail {

// Rank of a GF(2) boundary matrix given as columns of sorted row indices.
inline long gf2_rank(std::vector<std::vector<int>> columns) {
    std::map<int, std::vector<int>> pivot_owners;  // pivot row -> reduced column
    long rank = 0;
    for (std::vector<int>& col : columns) {
        while (!col.empty()) {
            const int pivot = col.back();
            const auto it = pivot_owners.find(pivot);
            if (it == pivot_owners.end()) break;
            // symmetric difference with the column owning this pivot
            std::vector<int> merged;
            std::set_symmetric_difference(col.begin(), col.end(),
                                          it->second.begin(), it->second.end(),
                                          std::back_inserter(merged));
            col = std::move(merged);
        }
        if (!col.empty()) {
            ++rank;
            pivot_owners.emplace(col.back(), std::move(col));
        }
    }
    return rank;
}

}  // namespace detail

// Betti numbers over GF(2): betti[k] = #k-simplices - rank d_k - rank d_{k+1}.
inline BettiVector betti(const SimplicialComplex& complex, int up_to_dim) {
    require(up_to_dim >= 0, "dimension must be nonnegative");
    const int top = std::max(up_to_dim + 1, complex.max_dim);

    std::vector<std::map<std::vector<int>, int>> index_of(
        static_cast<std::size_t>(top) + 1);
    for (const Simplex& s : complex.simplices) {
        const int dim = static_cast<int>(s.vertices.size()) - 1;
        if (dim <= top) {
            auto& m = index_of[static_cast<std::size_t>(dim)];
            const int next = static_cast<int>(m.size());
            m.emplace(s.vertices, next);
        }
    }

    // rank of each boundary map d_k : C_k -> C_{k-1}
    std::vector<long> rank(static_cast<std::size_t>(top) + 2, 0);
    for (int k = 1; k <= top; ++k) {
        std::vector<std::vector<int>> columns;
        const auto& faces = index_of[static_cast<std::size_t>(k - 1)];
        for (const auto& [verts, idx] : index_of[static_cast<std::size_t>(k)]) {
            std::vector<int> col;
            for (std::size_t drop = 0; drop < verts.size(); ++drop) {
                std::vector<int> face(verts.begin(), verts.end());
                face.erase(face.begin() + static_cast<long>(drop));
                col.push_back(faces.at(face));
            }
            std::sort(col.begin(), col.end());
            columns.push_back(std::move(col));
        }
        rank[static_cast<std::size_t>(k)] = detail::gf2_rank(std::move(columns));
    }

    BettiVector out;
    for (int k = 0; k <= up_to_dim; ++k) {
        const long n_k =
            static_cast<long>(index_of[static_cast<std::size_t>(k)].size());
        out.betti.push_back(n_k - rank[static_cast<std::size_t>(k)] -
                            rank[static_cast<std::size_t>(k) + 1]);
    }
    return out;
}

inline long euler_characteristic(const SimplicialComplex& complex) {
    long chi = 0;
    for (const Simplex& s : complex.simplices)
        chi += (s.vertices.size() % 2 == 1) ? 1 : -1;
    return chi;
}

}  // namespace mucrit
