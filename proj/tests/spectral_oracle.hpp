// Dense eigensolver oracle (Eigen) for spectral-bisection checks, plus small
// LocalGraph builders. Test-only; independent of the power-iteration path.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/discovery.hpp"

namespace oracles {

inline zidlab::WorldState fake_state(int id) {
  zidlab::WorldState s;
  s.n_agents = 1;
  s.positions[0] = zidlab::Pos{id % 50, id / 50};
  s.status[0] = zidlab::AgentStatus::Alive;
  return s;
}

inline zidlab::LocalGraph
make_local(int n, const std::vector<std::pair<int, int>> &edges) {
  zidlab::LocalGraph g;
  for (int i = 0; i < n; ++i)
    g.intern(fake_state(i));
  for (auto [u, v] : edges)
    g.add_edge(u, v);
  return g;
}

inline Eigen::MatrixXd normalized_laplacian(const zidlab::LocalGraph &g,
                                            const std::vector<int> &comp) {
  const int n = static_cast<int>(comp.size());
  std::vector<int> local(g.size(), -1);
  for (int i = 0; i < n; ++i)
    local[static_cast<size_t>(comp[static_cast<size_t>(i)])] = i;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int v = comp[static_cast<size_t>(i)];
    const double dv =
        static_cast<double>(g.adjacency[static_cast<size_t>(v)].size());
    lap(i, i) = 1.0;
    for (int u : g.adjacency[static_cast<size_t>(v)]) {
      const int j = local[static_cast<size_t>(u)];
      const double du =
          static_cast<double>(g.adjacency[static_cast<size_t>(u)].size());
      lap(i, j) -= 1.0 / std::sqrt(dv * du);
    }
  }
  return lap;
}

struct SpectralOracleResult {
  double lambda2 = 0.0;
  double gap = 0.0; // lambda3 - lambda2
  std::vector<std::uint8_t> side;
};

inline SpectralOracleResult dense_fiedler(const zidlab::LocalGraph &g) {
  const std::vector<int> comp = g.largest_component();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      normalized_laplacian(g, comp));
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);
  const int n = static_cast<int>(comp.size());
  for (int i = 0; i < n; ++i) {
    if (fiedler(i) != 0.0) {
      if (fiedler(i) < 0.0)
        fiedler = -fiedler;
      break;
    }
  }
  SpectralOracleResult out;
  out.lambda2 = solver.eigenvalues()(1);
  out.gap = solver.eigenvalues()(2) - solver.eigenvalues()(1);
  out.side.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    out.side[static_cast<size_t>(i)] = fiedler(i) < 0.0 ? 1 : 0;
  return out;
}

inline bool equal_or_mirror(const std::vector<std::uint8_t> &a,
                            const std::vector<std::uint8_t> &b) {
  if (a.size() != b.size())
    return false;
  bool same = true, mirror = true;
  for (size_t i = 0; i < a.size(); ++i) {
    same &= a[i] == b[i];
    mirror &= a[i] != b[i];
  }
  return same || mirror;
}

} // namespace oracles
