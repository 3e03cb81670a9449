#include "nsl/section_oracle.hpp"

#include <algorithm>
#include <map>

#include "nsl/rng.hpp"

namespace nsl {

namespace {

struct Layout {
  std::vector<std::string> vertex_order;          // sorted ids
  std::map<std::string, int> vertex_offset;       // start column per vertex
  std::map<std::string, int> node_param_counter;  // next parameter per vertex
  std::map<std::string, std::map<std::string, Rat>> edge_param;  // vertex -> edge -> t
  int total = 0;
};

Layout make_layout(const SheafOnTree& f) {
  Layout lay;
  for (const auto& v : f.tree().vertices()) lay.vertex_order.push_back(v.id);
  std::sort(lay.vertex_order.begin(), lay.vertex_order.end());
  for (const auto& vid : lay.vertex_order) {
    lay.vertex_offset[vid] = lay.total;
    for (int a : f.type_of(vid).parts()) lay.total += a + 1;
  }
  // Distinct node parameters per component: incident edges in sorted order get
  // t = 1, 2, 3, ...
  for (const auto& vid : lay.vertex_order) {
    auto inc = f.tree().incident_edges(vid);
    std::sort(inc.begin(), inc.end());
    int next = 1;
    for (const auto& eid : inc) lay.edge_param[vid][eid] = Rat(next++);
  }
  return lay;
}

// Row block evaluating the section of vertex vid at parameter t: r rows.
RatMat evaluation(const SheafOnTree& f, const std::string& vid, const Rat& t) {
  const auto& parts = f.type_of(vid).parts();
  int cols = 0;
  for (int a : parts) cols += a + 1;
  RatMat ev(f.rank(), cols);
  int off = 0;
  for (int k = 0; k < f.rank(); ++k) {
    Rat p(1);
    for (int j = 0; j <= parts[k]; ++j) {
      ev.at(k, off + j) = p;
      p *= t;
    }
    off += parts[k] + 1;
  }
  return ev;
}

RatMat random_full_rank(Rng& rng, int rows, int cols) {
  for (;;) {
    RatMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = Rat(rng.range(-3, 3));
    if (m.rank() == std::min(rows, cols)) return m;
  }
}

EdgeGluing gluing_for(const SheafOnTree& f, const std::string& eid, const OracleOptions& opts,
                      Rng& rng) {
  auto it = f.gluing().find(eid);
  if (it != f.gluing().end()) return it->second;
  int r = f.rank();
  int rows = r - f.defect_of(eid);
  EdgeGluing gl{RatMat(rows, r), RatMat(rows, r), RatMat(rows, rows)};
  if (opts.gluing == OracleOptions::Gluing::Canonical) {
    // Span of the last r - delta coordinates, identity identification.
    for (int i = 0; i < rows; ++i) {
      gl.pi_minus.at(i, r - rows + i) = 1;
      gl.pi_plus.at(i, r - rows + i) = 1;
      gl.iso.at(i, i) = 1;
    }
  } else {
    gl.pi_minus = random_full_rank(rng, rows, r);
    gl.pi_plus = random_full_rank(rng, rows, r);
    for (;;) {
      gl.iso = random_full_rank(rng, rows, rows);
      if (rows == 0 || gl.iso.invertible()) break;
    }
  }
  return gl;
}

// All matching constraints of the glued sheaf, one row block per edge.
RatMat constraint_matrix(const SheafOnTree& f, const Layout& lay, const OracleOptions& opts) {
  require(f.nonnegative(), Errc::Domain, "section oracle asserted only for nonnegative sheaves");
  Rng rng(opts.seed);
  int rows = 0;
  for (const auto& e : f.tree().edges()) rows += f.rank() - f.defect_of(e.id);
  RatMat m(rows, lay.total);
  int row = 0;
  std::vector<std::string> eids;
  for (const auto& e : f.tree().edges()) eids.push_back(e.id);
  std::sort(eids.begin(), eids.end());
  for (const auto& eid : eids) {
    const Edge& e = f.tree().edge(eid);
    int block = f.rank() - f.defect_of(eid);
    if (block == 0) continue;
    EdgeGluing gl = gluing_for(f, eid, opts, rng);
    // Orient the node: minus side is the smaller vertex id.
    std::string vm = std::min(e.end0, e.end1), vp = std::max(e.end0, e.end1);
    RatMat evm = evaluation(f, vm, lay.edge_param.at(vm).at(eid));
    RatMat evp = evaluation(f, vp, lay.edge_param.at(vp).at(eid));
    RatMat lhs = (gl.iso * gl.pi_minus) * evm;  // block x cols(vm)
    RatMat rhs = gl.pi_plus * evp;              // block x cols(vp)
    int om = lay.vertex_offset.at(vm), op = lay.vertex_offset.at(vp);
    for (int i = 0; i < block; ++i) {
      for (int j = 0; j < lhs.cols(); ++j) m.at(row + i, om + j) += lhs.at(i, j);
      for (int j = 0; j < rhs.cols(); ++j) m.at(row + i, op + j) -= rhs.at(i, j);
    }
    row += block;
  }
  return m;
}

}  // namespace

int h0_oracle(const SheafOnTree& f, const OracleOptions& opts) {
  Layout lay = make_layout(f);
  RatMat m = constraint_matrix(f, lay, opts);
  return lay.total - m.rank();
}

bool is_globally_generated_oracle(const SheafOnTree& f, const OracleOptions& opts) {
  require(f.nonnegative(), Errc::Domain, "global-generation oracle needs a nonnegative sheaf");
  Layout lay = make_layout(f);
  RatMat m = constraint_matrix(f, lay, opts);
  auto basis = m.kernel_basis();
  if (static_cast<int>(basis.size()) < f.rank()) return false;
  for (const auto& vid : lay.vertex_order) {
    int amax = f.type_of(vid).parts().back();
    // Rank at a generic point equals the max over r*amax + 1 samples: any
    // nonzero r x r minor is a polynomial in t of degree <= r*amax.
    int samples = f.rank() * amax + 1;
    int best = 0;
    for (int s = 1; s <= samples && best < f.rank(); ++s) {
      Rat t(-s);  // node parameters are positive, negatives are off-node
      RatMat ev = evaluation(f, vid, t);
      RatMat img(f.rank(), static_cast<int>(basis.size()));
      for (size_t b = 0; b < basis.size(); ++b) {
        int off = lay.vertex_offset.at(vid);
        for (int i = 0; i < f.rank(); ++i) {
          Rat acc(0);
          for (int j = 0; j < ev.cols(); ++j) acc += ev.at(i, j) * basis[b][off + j];
          img.at(i, static_cast<int>(b)) = acc;
        }
      }
      best = std::max(best, img.rank());
    }
    if (best < f.rank()) return false;
  }
  return true;
}

int constrained_sections_oracle(const SheafOnTree& f,
                                const std::vector<std::string>& vanish_vertices,
                                const OracleOptions& opts) {
  Layout lay = make_layout(f);
  RatMat base = constraint_matrix(f, lay, opts);
  int extra = f.rank() * static_cast<int>(vanish_vertices.size());
  RatMat m(base.rows() + extra, lay.total);
  for (int i = 0; i < base.rows(); ++i)
    for (int j = 0; j < base.cols(); ++j) m.at(i, j) = base.at(i, j);
  int row = base.rows();
  int fresh = 1;
  for (const auto& vid : vanish_vertices) {
    require(f.tree().has_vertex(vid), Errc::Domain, "vanish point on unknown vertex " + vid);
    RatMat ev = evaluation(f, vid, Rat(-fresh++));
    int off = lay.vertex_offset.at(vid);
    for (int i = 0; i < f.rank(); ++i)
      for (int j = 0; j < ev.cols(); ++j) m.at(row + i, off + j) = ev.at(i, j);
    row += f.rank();
  }
  return lay.total - m.rank();
}

}  // namespace nsl
