// Buchberger completion for submodules of free modules over Q[t, y] / F_p[t, y].

#include <algorithm>
#include <numeric>

#include "reachmod/errors.hpp"
#include "reachmod/freemod.hpp"

namespace reachmod {

using detail::ModTerm;
using detail::SparseVec;

namespace {

SparseVec to_sparse(const ModuleElement& v, const ModuleOrder& order) {
  SparseVec out;
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms())
      out.push_back({static_cast<std::uint32_t>(i), t.monomial, t.coefficient});
  std::sort(out.begin(), out.end(), [&order](const ModTerm& a, const ModTerm& b) {
    return order.compare(a.position, a.monomial, b.position, b.monomial) > 0;
  });
  return out;
}

ModuleElement from_sparse(const SparseVec& v, const RingPtr& ring, std::size_t rank) {
  std::vector<std::vector<Term>> buckets(rank);
  for (const auto& t : v) buckets[t.position].push_back({t.monomial, t.coefficient});
  std::vector<Polynomial> entries;
  entries.reserve(rank);
  for (auto& b : buckets) entries.emplace_back(ring, std::move(b));
  return ModuleElement(ring, std::move(entries));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  std::uint32_t position;
  Monomial lcm;
  // Sugar: degree the S-vector would have if the inputs were homogenized.
  std::uint32_t sugar;
};

std::uint32_t max_degree(const SparseVec& v) {
  std::uint32_t d = 0;
  for (const auto& t : v) d = std::max(d, t.monomial.degree());
  return d;
}

using Cofactor = std::vector<Polynomial>;

// p[start..] - c * m * g, where c * m * lt(g) cancels p[start] exactly.
SparseVec subtract_multiple(const Ring& field, const ModuleOrder& order, const SparseVec& p,
                            std::size_t start, const Rational& c, const Monomial& m,
                            const SparseVec& g) {
  SparseVec out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start + 1, j = 1;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].monomial * m;
    int c3 = i == p.size() ? -1 : order.compare(p[i].position, p[i].monomial, g[j].position, gm);
    if (c3 > 0) {
      out.push_back(p[i++]);
    } else if (c3 < 0) {
      out.push_back({g[j].position, gm, field.neg(field.mul(c, g[j].coefficient))});
      ++j;
    } else {
      Rational r = field.sub(p[i].coefficient, field.mul(c, g[j].coefficient));
      if (r != 0) out.push_back({p[i].position, p[i].monomial, std::move(r)});
      ++i;
      ++j;
    }
  }
  return out;
}

void cofactor_axpy(Cofactor& target, const Rational& c, const Monomial& m,
                   const Cofactor& source) {
  for (std::size_t k = 0; k < target.size(); ++k)
    if (!source[k].is_zero()) target[k] -= source[k].times_term(m, c);
}

// Reduction of p by the monic elements basis[reducers]. With `full` unset
// only leading terms are reduced. Full reduction inside Buchberger is
// costly under position-over-term orders: clearing a tail term in an upper
// position can push terms of large degree into every lower position.
SparseVec reduce_with(const Ring& field, const ModuleOrder& order, SparseVec p,
                      const std::vector<SparseVec>& basis,
                      const std::vector<std::size_t>& reducers, Cofactor* cof,
                      const std::vector<Cofactor>* cofactors, bool full = true) {
  SparseVec remainder;
  std::size_t start = 0;
  while (start < p.size()) {
    if (!full && !remainder.empty()) break;
    const ModTerm& t = p[start];
    const SparseVec* g = nullptr;
    std::size_t found = 0;
    for (std::size_t idx : reducers) {
      const ModTerm& lead = basis[idx].front();
      if (lead.position == t.position && lead.monomial.divides(t.monomial)) {
        g = &basis[idx];
        found = idx;
        break;
      }
    }
    if (!g) {
      remainder.push_back(t);
      ++start;
      continue;
    }
    Monomial m = t.monomial.quotient(g->front().monomial);
    Rational c = t.coefficient;
    if (cof) cofactor_axpy(*cof, c, m, (*cofactors)[found]);
    p = subtract_multiple(field, order, p, start, c, m, *g);
    start = 0;
  }
  if (!full && !remainder.empty()) remainder.insert(remainder.end(), p.begin() + start, p.end());
  return remainder;
}

class Engine {
 public:
  Engine(RingPtr ring, std::size_t rank, const ModuleOrder& order, bool track)
      : ring_(std::move(ring)), field_(*ring_), rank_(rank), order_(order), track_(track) {}

  SparseVec reduce(SparseVec p, Cofactor* cof, const std::vector<std::size_t>& reducers,
                   bool full = true) const {
    return reduce_with(field_, order_, std::move(p), basis_, reducers, cof, &cofactors_, full);
  }

  void make_monic(SparseVec& v, Cofactor* cof) const {
    const Rational& lc = v.front().coefficient;
    if (lc == 1) return;
    Rational inv = field_.inv(lc);
    for (auto& t : v) t.coefficient = field_.mul(t.coefficient, inv);
    if (cof)
      for (auto& c : *cof) c = c.scaled(inv);
  }

  SparseVec s_vector(const Pair& pr, Cofactor* cof) const {
    const SparseVec& a = basis_[pr.i];
    const SparseVec& b = basis_[pr.j];
    Monomial ma = pr.lcm.quotient(a.front().monomial);
    Monomial mb = pr.lcm.quotient(b.front().monomial);
    SparseVec shifted;
    shifted.reserve(a.size());
    for (const auto& t : a) shifted.push_back({t.position, t.monomial * ma, t.coefficient});
    if (cof) {
      *cof = Cofactor(cofactors_[pr.i].size(), Polynomial(ring_));
      for (std::size_t k = 0; k < cof->size(); ++k)
        (*cof)[k] = cofactors_[pr.i][k].times_term(ma, 1);
      cofactor_axpy(*cof, 1, mb, cofactors_[pr.j]);
    }
    return subtract_multiple(field_, order_, shifted, 0, 1, mb, b);
  }

  // Gebauer-Moeller update after appending basis element `h`.
  void insert(SparseVec h, Cofactor cof, std::uint32_t sugar) {
    const std::size_t hi = basis_.size();
    const ModTerm lead = h.front();
    basis_.push_back(std::move(h));
    sugar_.push_back(sugar);
    if (track_) cofactors_.push_back(std::move(cof));
    redundant_.push_back(false);

    const bool ideal_case = rank_ == 1;
    std::vector<std::pair<std::size_t, Monomial>> candidates;
    for (std::size_t i = 0; i < hi; ++i) {
      if (redundant_[i] || basis_[i].front().position != lead.position) continue;
      candidates.emplace_back(i, basis_[i].front().monomial.lcm(lead.monomial));
    }
    std::vector<std::pair<std::size_t, Monomial>> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& [i, l] = candidates[k];
      bool coprime = ideal_case && basis_[i].front().monomial.coprime(lead.monomial);
      bool dominated = false;
      for (std::size_t k2 = k + 1; k2 < candidates.size() && !dominated; ++k2)
        dominated = candidates[k2].second.divides(l);
      for (std::size_t k2 = 0; k2 < kept.size() && !dominated; ++k2)
        dominated = kept[k2].second.divides(l);
      if (coprime || !dominated) kept.push_back(candidates[k]);
      else ++stats_.pairs_discarded;
    }

    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.position != lead.position || !lead.monomial.divides(p.lcm)) return false;
      Monomial li = basis_[p.i].front().monomial.lcm(lead.monomial);
      Monomial lj = basis_[p.j].front().monomial.lcm(lead.monomial);
      bool drop = !(li == p.lcm) && !(lj == p.lcm);
      if (drop) ++stats_.pairs_discarded;
      return drop;
    });

    for (const auto& [i, l] : kept) {
      if (ideal_case && basis_[i].front().monomial.coprime(lead.monomial)) {
        ++stats_.pairs_discarded;
        continue;
      }
      const std::uint32_t si = sugar_[i] + l.degree() - basis_[i].front().monomial.degree();
      const std::uint32_t sh = sugar + l.degree() - lead.monomial.degree();
      pairs_.push_back({i, hi, lead.position, l, std::max(si, sh)});
    }

    for (std::size_t i = 0; i < hi; ++i)
      if (!redundant_[i] && basis_[i].front().position == lead.position &&
          lead.monomial.divides(basis_[i].front().monomial))
        redundant_[i] = true;
  }

  std::vector<std::size_t> active() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!redundant_[i]) out.push_back(i);
    return out;
  }

  // Sugar strategy: smallest sugar, ties by module order of the lcm.
  Pair take_pair() {
    auto best = pairs_.begin();
    const bool by_position = order_.rule == PositionRule::PositionOverTerm;
    for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
      if (by_position && it->position != best->position) {
        if (order_.compare(it->position, it->lcm, best->position, best->lcm) < 0) best = it;
        continue;
      }
      if (it->sugar != best->sugar) {
        if (it->sugar < best->sugar) best = it;
        continue;
      }
      int c = order_.compare(it->position, it->lcm, best->position, best->lcm);
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
    }
    Pair p = *best;
    pairs_.erase(best);
    return p;
  }

  void run(std::vector<SparseVec> inputs, std::size_t cap) {
    std::vector<std::size_t> idx(inputs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (inputs[a].empty() || inputs[b].empty()) return !inputs[a].empty() && inputs[b].empty();
      const ModTerm& x = inputs[a].front();
      const ModTerm& y = inputs[b].front();
      return order_.compare(x.position, x.monomial, y.position, y.monomial) < 0;
    });
    for (std::size_t k : idx) {
      if (inputs[k].empty()) continue;
      Cofactor cof;
      if (track_) {
        cof.assign(inputs.size(), Polynomial(ring_));
        cof[k] = Polynomial::constant(ring_, 1);
      }
      const std::uint32_t sugar = max_degree(inputs[k]);
      SparseVec r = reduce(std::move(inputs[k]), track_ ? &cof : nullptr, active(), false);
      if (r.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      make_monic(r, track_ ? &cof : nullptr);
      insert(std::move(r), std::move(cof), std::max(sugar, max_degree(r)));
    }
    while (!pairs_.empty()) {
      Pair p = take_pair();
      if (++stats_.pairs_processed > cap)
        throw ResourceExhausted("Buchberger S-pair cap of " + std::to_string(cap) +
                                " exceeded");
      Cofactor cof;
      SparseVec s = s_vector(p, track_ ? &cof : nullptr);
      SparseVec r = reduce(std::move(s), track_ ? &cof : nullptr, active(), false);
      if (r.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      make_monic(r, track_ ? &cof : nullptr);
      insert(std::move(r), std::move(cof), std::max(p.sugar, max_degree(r)));
    }
  }

  RingPtr ring_;
  const Ring& field_;
  std::size_t rank_;
  ModuleOrder order_;
  bool track_;
  std::vector<SparseVec> basis_;
  std::vector<Cofactor> cofactors_;
  std::vector<bool> redundant_;
  std::vector<std::uint32_t> sugar_;
  std::vector<Pair> pairs_;
  BuchbergerStats stats_;
};

}  // namespace

int ModuleOrder::compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b,
                         const Monomial& b) const {
  if (elimination_block != 0) {
    bool upper_a = pos_a < elimination_block;
    bool upper_b = pos_b < elimination_block;
    if (upper_a != upper_b) return upper_a ? 1 : -1;
  }
  if (rule == PositionRule::PositionOverTerm) {
    if (pos_a != pos_b) return pos_a < pos_b ? 1 : -1;
    return reachmod::compare(a, b, base);
  }
  int c = reachmod::compare(a, b, base);
  if (c != 0) return c;
  if (pos_a != pos_b) return pos_a < pos_b ? 1 : -1;
  return 0;
}

GroebnerBasis::GroebnerBasis(RingPtr ring, std::size_t rank, ModuleOrder order)
    : ring_(std::move(ring)), rank_(rank), order_(order) {}

ModuleElement GroebnerBasis::element(std::size_t i) const {
  return from_sparse(vecs_[i], ring_, rank_);
}

std::vector<ModuleElement> GroebnerBasis::elements() const {
  std::vector<ModuleElement> out;
  out.reserve(vecs_.size());
  for (const auto& v : vecs_) out.push_back(from_sparse(v, ring_, rank_));
  return out;
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (!a.ring_->same_as(*b.ring_) || a.rank_ != b.rank_ || !(a.order_ == b.order_) ||
      a.vecs_.size() != b.vecs_.size())
    return false;
  for (std::size_t k = 0; k < a.vecs_.size(); ++k) {
    const SparseVec& x = a.vecs_[k];
    const SparseVec& y = b.vecs_[k];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].position != y[i].position || !(x[i].monomial == y[i].monomial) ||
          x[i].coefficient != y[i].coefficient)
        return false;
  }
  return true;
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<ModuleElement>& generators,
                         std::size_t rank, const ModuleOrder& order,
                         const BuchbergerOptions& options) {
  std::vector<SparseVec> inputs;
  inputs.reserve(generators.size());
  for (const auto& g : generators) {
    require_same_ring(ring, g.ring());
    if (g.rank() != rank)
      throw DimensionError("generator of rank " + std::to_string(g.rank()) +
                           " in a module of rank " + std::to_string(rank));
    inputs.push_back(to_sparse(g, order));
  }
  Engine engine(ring, rank, order, options.track_cofactors);
  engine.run(std::move(inputs), options.pair_cap);

  GroebnerBasis gb(ring, rank, order);
  gb.tracked_ = options.track_cofactors;
  gb.input_count_ = generators.size();
  gb.stats_ = engine.stats_;
  for (std::size_t i : engine.active()) {
    gb.vecs_.push_back(std::move(engine.basis_[i]));
    if (gb.tracked_) gb.cofactors_.push_back(std::move(engine.cofactors_[i]));
  }
  return gb;
}

GroebnerBasis reduced_gb(const GroebnerBasis& basis) {
  const ModuleOrder& order = basis.order_;
  const bool track = basis.tracked_;
  Engine engine(basis.ring_, basis.rank_, order, track);
  engine.basis_ = basis.vecs_;
  if (track) engine.cofactors_ = basis.cofactors_;
  engine.redundant_.assign(engine.basis_.size(), false);

  auto lead_less = [&](std::size_t a, std::size_t b) {
    const ModTerm& x = engine.basis_[a].front();
    const ModTerm& y = engine.basis_[b].front();
    return order.compare(x.position, x.monomial, y.position, y.monomial) < 0;
  };
  std::vector<std::size_t> idx(engine.basis_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), lead_less);

  std::vector<std::size_t> minimal;
  for (std::size_t i : idx) {
    const ModTerm& lead = engine.basis_[i].front();
    bool divisible = std::any_of(minimal.begin(), minimal.end(), [&](std::size_t k) {
      const ModTerm& other = engine.basis_[k].front();
      return other.position == lead.position && other.monomial.divides(lead.monomial);
    });
    if (!divisible) minimal.push_back(i);
  }

  for (std::size_t i : minimal) {
    std::vector<std::size_t> others;
    for (std::size_t k : minimal)
      if (k != i) others.push_back(k);
    Cofactor cof;
    if (track) cof = engine.cofactors_[i];
    SparseVec r = engine.reduce(engine.basis_[i], track ? &cof : nullptr, others);
    engine.make_monic(r, track ? &cof : nullptr);
    engine.basis_[i] = std::move(r);
    if (track) engine.cofactors_[i] = std::move(cof);
  }

  std::sort(minimal.begin(), minimal.end(),
            [&](std::size_t a, std::size_t b) { return lead_less(b, a); });
  GroebnerBasis out(basis.ring_, basis.rank_, order);
  out.tracked_ = track;
  out.input_count_ = basis.input_count_;
  out.stats_ = basis.stats_;
  for (std::size_t i : minimal) {
    out.vecs_.push_back(std::move(engine.basis_[i]));
    if (track) out.cofactors_.push_back(std::move(engine.cofactors_[i]));
  }
  return out;
}

ModuleElement normal_form(const ModuleElement& v, const GroebnerBasis& basis) {
  require_same_ring(v.ring(), basis.ring());
  if (v.rank() != basis.rank())
    throw DimensionError("element of rank " + std::to_string(v.rank()) +
                         " reduced against a basis of rank " + std::to_string(basis.rank()));
  std::vector<std::size_t> all(basis.size());
  std::iota(all.begin(), all.end(), 0);
  return from_sparse(reduce_with(*basis.ring(), basis.order(), to_sparse(v, basis.order()),
                                 basis.sparse(), all, nullptr, nullptr),
                     basis.ring(), basis.rank());
}

}  // namespace reachmod
