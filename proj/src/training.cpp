#include "dynlink/training.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <type_traits>

#include "dynlink/error.hpp"
#include "dynlink/rng.hpp"

namespace dynlink {

namespace {

// Seed stream ids; each source draws from its own generator.
constexpr std::uint64_t kWalkStream = 0x57a1;
constexpr std::uint64_t kNegativeStream = 0x4e60;  // + term
constexpr std::uint64_t kShuffleStream = 0x5f1e;

constexpr double kDecayFloor = 1e-4;
constexpr double kDivergenceBound = 1e6;

template <class State>
auto blocks_for(State& s, Term term) {
  constexpr bool kConst = std::is_const_v<State>;
  using Matrix = std::conditional_t<kConst, const ComplexMatrix, ComplexMatrix>;
  using Phase = std::conditional_t<kConst, const DiagonalPhase, DiagonalPhase>;
  struct Blocks {
    Matrix* left;
    Matrix* right;
    Phase* phase;  // null on context terms
  };
  switch (term) {
    case Term::formation_supervised: return Blocks{&s.v_f, &s.v_f, &s.theta_f};
    case Term::dissolution_supervised: return Blocks{&s.v_d, &s.v_d, &s.theta_d};
    case Term::formation_context: return Blocks{&s.v_f, &s.u_f, nullptr};
    case Term::dissolution_context: return Blocks{&s.v_d, &s.u_d, nullptr};
  }
  return Blocks{nullptr, nullptr, nullptr};
}

void check_sample(const EmbeddingState& s, const TrainingSample& smp) {
  DYNLINK_REQUIRE(smp.i < s.num_nodes && smp.j < s.num_nodes, "sample node id out of range");
  DYNLINK_REQUIRE(smp.i != smp.j, "sample pairs a node with itself");
  DYNLINK_REQUIRE(smp.gamma == 1 || smp.gamma == -1, "sample label must be +1 or -1");
}

}  // namespace

const char* to_string(TrainMode mode) noexcept {
  switch (mode) {
    case TrainMode::semigraph: return "semigraph";
    case TrainMode::supervised_only: return "supervised";
    case TrainMode::embedding_only: return "graphemb";
  }
  return "?";
}

TrainMode parse_train_mode(const std::string& name) {
  if (name == "semigraph") return TrainMode::semigraph;
  if (name == "supervised" || name == "supervised-only") return TrainMode::supervised_only;
  if (name == "graphemb" || name == "embedding-only") return TrainMode::embedding_only;
  throw ConfigError("unknown training mode '" + name + "'");
}

void TrainConfig::validate() const {
  if (d < 1) throw ConfigError("d must be >= 1");
  if (!(lambda_f >= 0.0) || !(lambda_d >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) throw ConfigError("learning rates must be > 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (k_neg < 1) throw ConfigError("k_neg must be >= 1");
  walk.validate();
}

void LossReport::write_csv(std::ostream& out) const {
  out << "epoch,L_fs,L_fu,L_f,L_ds,L_du,L_d\n";
  for (const EpochLoss& e : epochs) {
    out << e.epoch << ',' << e.l_fs << ',' << e.l_fu << ',' << e.l_f << ',' << e.l_ds << ','
        << e.l_du << ',' << e.l_d << '\n';
  }
}

double sample_score(const EmbeddingState& state, const TrainingSample& s) {
  check_sample(state, s);
  const auto b = blocks_for(state, s.term);
  const ComplexView vi = b.left->row(s.i);
  const ComplexView vj = b.right->row(s.j);
  return b.phase ? hermitian_score(vi, *b.phase, vj) : context_score(vi, vj);
}

double sample_loglik(const EmbeddingState& state, const TrainingSample& s) {
  return log_sigmoid(static_cast<double>(s.gamma) * sample_score(state, s));
}

// score = sum_k cos(t)(a c + b d) + sin(t)(b c - a d), vi = a + ib, vj = c + id
//   ds/da = cos c - sin d      ds/db = cos d + sin c
//   ds/dc = cos a + sin b      ds/dd = cos b - sin a
//   ds/dt = -sin (a c + b d) + cos (b c - a d)
SparseGradient sample_gradient(const EmbeddingState& state, const TrainingSample& s) {
  const double score = sample_score(state, s);
  const double gamma = s.gamma;
  const double g = gamma * sigmoid(-gamma * score);

  const auto b = blocks_for(state, s.term);
  const ComplexView vi = b.left->row(s.i);
  const ComplexView vj = b.right->row(s.j);
  const std::size_t d = state.d;

  SparseGradient out;
  out.term = s.term;
  out.i = s.i;
  out.j = s.j;
  out.di = ComplexVec(d);
  out.dj = ComplexVec(d);
  if (b.phase) out.dtheta.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double co = b.phase ? std::cos(b.phase->theta[k]) : 1.0;
    const double si = b.phase ? std::sin(b.phase->theta[k]) : 0.0;
    const double a = vi.re[k], bb = vi.im[k], c = vj.re[k], dd = vj.im[k];
    out.di.re[k] = g * (co * c - si * dd);
    out.di.im[k] = g * (co * dd + si * c);
    out.dj.re[k] = g * (co * a + si * bb);
    out.dj.im[k] = g * (co * bb - si * a);
    if (b.phase) out.dtheta[k] = g * (-si * (a * c + bb * dd) + co * (bb * c - a * dd));
  }
  return out;
}

double sgd_step(EmbeddingState& state, const TrainingSample& s, double eta_v, double eta_theta,
                double weight) {
  const auto b = blocks_for(state, s.term);
  const ComplexSpan vi = b.left->row(s.i);
  const ComplexSpan vj = b.right->row(s.j);
  const std::size_t d = state.d;
  const double gamma = s.gamma;

  // Dimensions are separable, so each k can be updated in place once the
  // full score is known.
  constexpr std::size_t kStack = 16;
  double cos_buf[kStack], sin_buf[kStack];
  std::vector<double> cos_heap, sin_heap;
  double* co = cos_buf;
  double* si = sin_buf;
  if (d > kStack) {
    cos_heap.resize(d);
    sin_heap.resize(d);
    co = cos_heap.data();
    si = sin_heap.data();
  }

  double score = 0.0;
  if (b.phase) {
    for (std::size_t k = 0; k < d; ++k) {
      co[k] = std::cos(b.phase->theta[k]);
      si[k] = std::sin(b.phase->theta[k]);
      score += co[k] * (vi.re[k] * vj.re[k] + vi.im[k] * vj.im[k]) +
               si[k] * (vi.im[k] * vj.re[k] - vi.re[k] * vj.im[k]);
    }
  } else {
    for (std::size_t k = 0; k < d; ++k) score += vi.re[k] * vj.re[k] + vi.im[k] * vj.im[k];
  }

  const LogisticPair lp = logistic_pair(gamma * score);
  const double g = gamma * lp.sigmoid_neg;
  const double step = eta_v * weight * g;
  if (b.phase) {
    const double tstep = eta_theta * weight * g;
    for (std::size_t k = 0; k < d; ++k) {
      const double a = vi.re[k], bb = vi.im[k], c = vj.re[k], dd = vj.im[k];
      vi.re[k] = a + step * (co[k] * c - si[k] * dd);
      vi.im[k] = bb + step * (co[k] * dd + si[k] * c);
      vj.re[k] = c + step * (co[k] * a + si[k] * bb);
      vj.im[k] = dd + step * (co[k] * bb - si[k] * a);
      b.phase->theta[k] += tstep * (-si[k] * (a * c + bb * dd) + co[k] * (bb * c - a * dd));
    }
  } else {
    for (std::size_t k = 0; k < d; ++k) {
      const double a = vi.re[k], bb = vi.im[k], c = vj.re[k], dd = vj.im[k];
      vi.re[k] = a + step * c;
      vi.im[k] = bb + step * dd;
      vj.re[k] = c + step * a;
      vj.im[k] = dd + step * bb;
    }
  }
  return lp.log_sigmoid;
}

SampleSource::SampleSource(const TemporalNetwork& net, TimeIndex t, const TrainConfig& cfg,
                           TrainMode mode)
    : cfg_(cfg), node_count_(net.node_count()) {
  cfg.validate();
  DYNLINK_REQUIRE(t >= 1, "training needs at least one past transition (origin >= 1)");
  DYNLINK_REQUIRE(t < net.snapshot_count(), "training origin beyond the last snapshot");
  DYNLINK_REQUIRE(node_count_ >= 2, "training needs at least two nodes");

  const TemporalNetwork view = net.truncated(t + 1);
  current_ = view.snapshot(t);
  const std::size_t p = cfg.p == 0 ? t : cfg.p;
  const auto window = window_transitions(view, t, p);
  formed_ = positive_transition_pairs(window, TransitionKind::formation);
  dissolved_ = positive_transition_pairs(window, TransitionKind::dissolution);

  const bool supervised = mode != TrainMode::embedding_only;
  const bool context = mode != TrainMode::supervised_only;
  auto set = [&](Term term, bool on, double w) {
    active_[static_cast<std::size_t>(term)] = on;
    weight_[static_cast<std::size_t>(term)] = w;
  };
  set(Term::formation_supervised, supervised, 1.0);
  set(Term::dissolution_supervised, supervised, 1.0);
  if (mode == TrainMode::embedding_only) {
    set(Term::formation_context, true, 1.0);
    set(Term::dissolution_context, true, 1.0);
  } else {
    // A zero weight removes the term from the stream altogether.
    set(Term::formation_context, context && cfg.lambda_f > 0.0, cfg.lambda_f);
    set(Term::dissolution_context, context && cfg.lambda_d > 0.0, cfg.lambda_d);
  }
}

std::vector<TrainingSample> SampleSource::epoch_samples(std::size_t epoch) const {
  std::vector<TrainingSample> out;
  auto add_term = [&](Term term, const std::vector<Edge>& positives, const PairSet& exclude) {
    out.reserve(out.size() + positives.size() * (1 + cfg_.k_neg));
    for (const Edge& e : positives) out.push_back({e.src, e.dst, 1, term});
    const auto seed = derive_seed(cfg_.seed, kNegativeStream + static_cast<std::uint64_t>(term), epoch);
    const auto neg = negative_samples(positives, exclude, node_count_, cfg_.k_neg, seed, term);
    out.insert(out.end(), neg.begin(), neg.end());
  };

  if (active(Term::formation_supervised)) {
    add_term(Term::formation_supervised, formed_, PairSet(node_count_, formed_));
  }
  if (active(Term::dissolution_supervised)) {
    add_term(Term::dissolution_supervised, dissolved_, PairSet(node_count_, dissolved_));
  }
  if (active(Term::formation_context) || active(Term::dissolution_context)) {
    WalkConfig walk = cfg_.walk;
    walk.seed = derive_seed(cfg_.seed, kWalkStream, epoch);
    const auto contexts = deep_walk_contexts(current_, node_count_, walk);
    const PairSet exclude(node_count_, contexts);
    if (active(Term::formation_context)) add_term(Term::formation_context, contexts, exclude);
    if (active(Term::dissolution_context)) add_term(Term::dissolution_context, contexts, exclude);
  }

  Rng shuffle_rng(derive_seed(cfg_.seed, kShuffleStream, epoch));
  shuffle_rng.shuffle(out.begin(), out.end());
  return out;
}

TrainResult train(const TemporalNetwork& net, TimeIndex t, const TrainConfig& cfg, TrainMode mode) {
  const SampleSource source(net, t, cfg, mode);
  TrainResult result;
  result.state = init_state(net.node_count(), cfg.d, cfg.seed);
  EmbeddingState& state = result.state;

  std::vector<TrainingSample> samples = source.epoch_samples(0);
  const double planned = static_cast<double>(samples.size()) * static_cast<double>(cfg.epochs);
  double processed = 0.0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (epoch > 0) samples = source.epoch_samples(epoch);
    std::array<double, kTermCount> sum{};
    std::array<std::size_t, kTermCount> count{};
    for (const TrainingSample& s : samples) {
      const double decay = planned > 0.0 ? std::max(1.0 - processed / planned, kDecayFloor) : 1.0;
      const auto term = static_cast<std::size_t>(s.term);
      sum[term] += sgd_step(state, s, cfg.eta1 * decay, cfg.eta2 * decay, source.weight(s.term));
      ++count[term];
      processed += 1.0;
    }

    EpochLoss row;
    row.epoch = epoch;
    row.samples = count;
    auto avg = [&](Term term) {
      const auto k = static_cast<std::size_t>(term);
      return count[k] ? sum[k] / static_cast<double>(count[k]) : 0.0;
    };
    row.l_fs = avg(Term::formation_supervised);
    row.l_ds = avg(Term::dissolution_supervised);
    row.l_fu = avg(Term::formation_context);
    row.l_du = avg(Term::dissolution_context);
    const double wf = mode == TrainMode::embedding_only ? 1.0 : cfg.lambda_f;
    const double wd = mode == TrainMode::embedding_only ? 1.0 : cfg.lambda_d;
    row.l_f = row.l_fs + wf * row.l_fu;
    row.l_d = row.l_ds + wd * row.l_du;
    if (!std::isfinite(row.l_f) || !std::isfinite(row.l_d) || !state.all_finite()) {
      throw DivergedError(epoch, "non-finite loss");
    }
    if (state.max_abs() > kDivergenceBound) throw DivergedError(epoch, "parameter magnitude above 1e6");
    result.report.epochs.push_back(row);
  }
  return result;
}

}  // namespace dynlink
