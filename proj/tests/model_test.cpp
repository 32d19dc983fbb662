#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "flowcov/analyzer.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/gradcheck.hpp"
#include "flowcov/interpreter.hpp"
#include "flowcov/model.hpp"
#include "test_programs.hpp"

namespace flowcov {
namespace {

using Vec = std::vector<double>;

Cfg cfg_of(const std::string& src, const InputBindings& inputs = {}) { return build_cfg(parse(src), inputs); }

// Plain-loop reimplementation of the network used as an oracle for the tape
// version.
struct Reference {
  const ParamStore<double>& p;

  Vec matvec(const std::string& name, const Vec& x) const {
    const auto& W = p.value(name);
    Vec out(static_cast<std::size_t>(W.rows), 0.0);
    for (int i = 0; i < W.rows; ++i) {
      for (int j = 0; j < W.cols; ++j) out[static_cast<std::size_t>(i)] += W.at(i, j) * x[static_cast<std::size_t>(j)];
    }
    return out;
  }
  Vec gate(const std::string& prefix, const Vec& x, const Vec& h) const {
    Vec a = matvec(prefix + ".W", x);
    const Vec b = matvec(prefix + ".U", h);
    const auto& bias = p.value(prefix + ".b");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] + bias.data[i];
    return a;
  }
  static double sig(double v) { return 1.0 / (1.0 + std::exp(-v)); }

  Vec encode(const std::vector<int>& ids) const {
    const auto& E = p.value("embedding");
    Vec h(static_cast<std::size_t>(E.cols), 0.0);
    Vec sum(h.size(), 0.0);
    for (int id : ids) {
      Vec x(h.size());
      for (int j = 0; j < E.cols; ++j) x[static_cast<std::size_t>(j)] = E.at(id, j);
      const Vec z = gate("gru.update", x, h);
      const Vec r = gate("gru.reset", x, h);
      Vec rh(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) rh[i] = sig(r[i]) * h[i];
      const Vec cand = gate("gru.candidate", x, rh);
      for (std::size_t i = 0; i < h.size(); ++i) {
        const double zi = sig(z[i]);
        h[i] = (1 - zi) * h[i] + zi * std::tanh(cand[i]);
        sum[i] += h[i];
      }
    }
    for (double& v : sum) v /= static_cast<double>(ids.size());
    return sum;
  }

  void cell(const Vec& x, Vec& h, Vec& c) const {
    const Vec in = gate("cell.input", x, h), fg = gate("cell.forget", x, h);
    const Vec op = gate("cell.output", x, h), u = gate("cell.update", x, h);
    for (std::size_t i = 0; i < h.size(); ++i) {
      c[i] = sig(in[i]) * std::tanh(u[i]) + sig(fg[i]) * c[i];
      h[i] = sig(op[i]) * std::tanh(c[i]);
    }
  }

  /// Hidden states of every node, following the propagation rules directly.
  std::vector<Vec> propagate(const Cfg& cfg, const std::vector<Vec>& x) const {
    const std::size_t d = static_cast<std::size_t>(p.value("head.W_c").cols);
    const int n = static_cast<int>(cfg.size());
    std::vector<Vec> H(static_cast<std::size_t>(n), Vec(d, 0.0)), C = H;
    std::vector<int> blocked(static_cast<std::size_t>(n), -1);
    for (int i = 1; i < n; ++i) {
      Vec h(d, 0.0), c(d, 0.0);
      int live = 0;
      for (int q : cfg.forward_predecessors(i)) {
        if (blocked[static_cast<std::size_t>(q)] == i) continue;
        ++live;
        for (std::size_t k = 0; k < d; ++k) {
          h[k] += H[static_cast<std::size_t>(q)][k];
          c[k] += C[static_cast<std::size_t>(q)][k];
        }
      }
      for (std::size_t k = 0; k < d && live; ++k) {
        h[k] /= live;
        c[k] /= live;
      }
      cell(x[static_cast<std::size_t>(i)], h, c);
      for (int j : cfg.backward_sources(i)) cell(x[static_cast<std::size_t>(j)], h, c);
      H[static_cast<std::size_t>(i)] = h;
      C[static_cast<std::size_t>(i)] = c;
      if (cfg.node(i).kind == NodeKind::Condition) {
        double mean = 0;
        for (double v : h) mean += v;
        mean /= static_cast<double>(d);
        const auto& s = cfg.forward_successors(i);
        blocked[static_cast<std::size_t>(i)] = mean >= 0 ? s.front() : s.back();
      }
    }
    return H;
  }
};

Vec column_of(const Var<double>& v) { return v.value().data; }

struct Fixture {
  ParamStore<double> store;
  Vocab vocab;

  Fixture(const std::vector<const Cfg*>& cfgs, int embed, int hidden, std::uint64_t seed) : vocab(build_vocab(cfgs)) {
    add_network_params(store, ModelDims{static_cast<int>(vocab.size()), embed, hidden});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (auto& [name, e] : store.entries()) {
      for (double& v : e.value.data) v = u(rng);
    }
  }
};

TEST(EncoderTest, MatchesHandUnrolledGru) {
  const Cfg cfg = cfg_of("x = y + 1\n", {{"y", Value(2)}});
  Fixture f({&cfg}, 3, 4, 11);
  const Reference ref{f.store};
  for (const CfgNode& node : cfg.nodes()) {
    Tape<double> tape;
    const auto net = bind_network<double>(tape, f.store, nullptr);
    const auto ids = f.vocab.encode(node.tokens);
    const Vec got = column_of(encode_node(tape, net, ids));
    const Vec want = ref.encode(ids);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-12) << node.label;
  }
}

TEST(EncoderTest, SingleTokenIsOneGruStep) {
  const Cfg cfg = cfg_of("x = 1\n");
  Fixture f({&cfg}, 2, 2, 3);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  const Vec got = column_of(encode_node(tape, net, {Vocab::kExit}));
  // With h = 0: z * tanh(W_c x + b_c).
  const auto& E = f.store.value("embedding");
  const Reference ref{f.store};
  const Vec x{E.at(Vocab::kExit, 0), E.at(Vocab::kExit, 1)};
  const Vec z = ref.gate("gru.update", x, {0, 0}), cand = ref.gate("gru.candidate", x, {0, 0});
  for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(got[k], Reference::sig(z[k]) * std::tanh(cand[k]), 1e-14);
}

TEST(EncoderTest, EmptySequenceThrows) {
  Fixture f({}, 2, 2, 1);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  EXPECT_THROW(encode_node(tape, net, {}), std::invalid_argument);
}

std::vector<Var<double>> random_embeddings(Tape<double>& tape, std::size_t n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Var<double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    Tensor<double> t(d, 1);
    for (double& v : t.data) v = u(rng);
    out.push_back(tape.constant(t));
  }
  return out;
}

TEST(PropagatorTest, ZeroParametersGiveZeroStates) {
  const Cfg cfg = cfg_of("x = 1\n");
  ParamStore<double> store;
  add_network_params(store, ModelDims{8, 3, 4});
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  const auto s = propagate(tape, cfg, random_embeddings(tape, cfg.size(), 3, 1), net);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    EXPECT_EQ(s.h[i].value(), Tensor<double>(4, 1));
    EXPECT_EQ(s.c[i].value(), Tensor<double>(4, 1));
  }
}

TEST(PropagatorTest, MatchesReferenceOnGeneratedPrograms) {
  GenConfig g;
  g.seed = 21;
  g.count = 25;
  const auto records = generate(g);
  for (const auto& rec : records) {
    Fixture f({&rec.cfg}, 3, 3, 99);
    Tape<double> tape;
    const auto net = bind_network<double>(tape, f.store, nullptr);
    const auto x = random_embeddings(tape, rec.cfg.size(), 3, 5);
    std::vector<Vec> xs;
    for (const auto& v : x) xs.push_back(column_of(v));
    const auto s = propagate(tape, rec.cfg, x, net);
    const auto want = Reference{f.store}.propagate(rec.cfg, xs);
    for (std::size_t i = 0; i < rec.cfg.size(); ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        ASSERT_NEAR(s.h[i].value().data[k], want[i][k], 1e-12) << rec.id << " node " << i;
      }
    }
  }
}

// Parameters that ignore the input: in = op = 1, forget = 0 and the update
// chosen so that every node ends with h = 0.5 in every component.
ParamStore<double> constant_state_params(int vocab) {
  ParamStore<double> store;
  add_network_params(store, ModelDims{vocab, 2, 2});
  std::fill_n(store.value("cell.input.b").data.begin(), 2, 50.0);
  std::fill_n(store.value("cell.output.b").data.begin(), 2, 50.0);
  std::fill_n(store.value("cell.forget.b").data.begin(), 2, -50.0);
  std::fill_n(store.value("cell.update.b").data.begin(), 2, std::atanh(std::atanh(0.5)));
  return store;
}

TEST(PropagatorTest, NonNegativeMeanBlocksLowerSuccessor) {
  const Cfg cfg = cfg_of("if a > 1:\n    a = 2\nelse:\n    a = 3\n", {{"a", Value(0)}});
  const ParamStore<double> store = constant_state_params(16);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  const auto s = propagate(tape, cfg, random_embeddings(tape, cfg.size(), 2, 2), net);
  const int cond = 2;
  ASSERT_EQ(cfg.node(cond).kind, NodeKind::Condition);
  EXPECT_NEAR(s.hidden_mean[cond], 0.5, 1e-12);
  const int lower = cfg.forward_successors(cond).front(), higher = cfg.forward_successors(cond).back();
  EXPECT_EQ(lower, cfg.branch_successor(cond, Branch::True));
  EXPECT_EQ(s.blocked[cond], lower);
  EXPECT_FALSE(s.received[static_cast<std::size_t>(lower)]);
  EXPECT_TRUE(s.received[static_cast<std::size_t>(higher)]);
  int out = 0;
  for (const auto& e : s.surviving) out += e.src == cond;
  EXPECT_EQ(out, 1);
}

TEST(PropagatorTest, NegativeMeanBlocksHigherSuccessor) {
  const Cfg cfg = cfg_of("if a > 1:\n    a = 2\nelse:\n    a = 3\n", {{"a", Value(0)}});
  ParamStore<double> store = constant_state_params(16);
  std::fill_n(store.value("cell.update.b").data.begin(), 2, -std::atanh(std::atanh(0.5)));
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  const auto s = propagate(tape, cfg, random_embeddings(tape, cfg.size(), 2, 2), net);
  EXPECT_EQ(s.blocked[2], cfg.forward_successors(2).back());
}

TEST(PropagatorTest, BlockedNodeSeesZeroState) {
  const Cfg cfg = cfg_of("if a > 1:\n    a = 2\nelse:\n    a = 3\n", {{"a", Value(0)}});
  Fixture f({&cfg}, 2, 3, 4);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  const auto x = random_embeddings(tape, cfg.size(), 2, 8);
  const auto s = propagate(tape, cfg, x, net);
  const int blocked = s.blocked[2];
  const auto zero = tape.constant(Tensor<double>(3, 1));
  const auto [h, c] = cell_step<double>(tape, net, x[static_cast<std::size_t>(blocked)], zero, zero);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(s.h[static_cast<std::size_t>(blocked)].value().data[k], h.value().data[k], 1e-15);
}

TEST(PropagatorTest, LoopTestGetsOneExtraStepWithStepEmbedding) {
  // BEGIN, i = 0, i < 3, i += 1 (body and step), EXIT.
  const Cfg cfg = cfg_of("i = 0\nwhile i < 3:\n    i += 1\n");
  ASSERT_EQ(cfg.size(), 5u);
  const int cond = 2, step = 3;
  ASSERT_EQ(cfg.backward_sources(cond), std::vector<int>{step});
  Fixture f({&cfg}, 2, 2, 6);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  const auto x = random_embeddings(tape, cfg.size(), 2, 3);
  const auto s = propagate(tape, cfg, x, net);
  const auto [h1, c1] = cell_step<double>(tape, net, x[cond], s.h[1], s.c[1]);
  const auto [h2, c2] = cell_step<double>(tape, net, x[step], h1, c1);
  EXPECT_NE(h1.value(), h2.value());
  for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(s.h[cond].value().data[k], h2.value().data[k], 1e-15);
}

TEST(PropagatorTest, EveryConditionKeepsExactlyOneEdge) {
  GenConfig g;
  g.seed = 4;
  g.count = 40;
  for (const auto& rec : generate(g)) {
    Fixture f({&rec.cfg}, 3, 4, 17);
    Tape<double> tape;
    const auto net = bind_network<double>(tape, f.store, nullptr);
    const auto s = propagate(tape, rec.cfg, random_embeddings(tape, rec.cfg.size(), 3, 2), net);
    std::vector<int> out(rec.cfg.size(), 0);
    for (const auto& e : s.surviving) ++out[static_cast<std::size_t>(e.src)];
    for (const auto& n : rec.cfg.nodes()) {
      const int want = n.kind == NodeKind::Condition ? 1 : static_cast<int>(rec.cfg.forward_successors(n.index).size());
      EXPECT_EQ(out[static_cast<std::size_t>(n.index)], want) << rec.id << " node " << n.index;
    }
  }
}

TEST(PropagatorTest, LaterEmbeddingsDoNotAffectEarlierNodes) {
  const Cfg cfg = cfg_of(testing::branching_program());
  Fixture f({&cfg}, 2, 3, 8);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  auto x = random_embeddings(tape, cfg.size(), 2, 1);
  const auto before = propagate(tape, cfg, x, net);
  const int last = static_cast<int>(cfg.size()) - 2;
  x[static_cast<std::size_t>(last)] = tape.constant(Tensor<double>(2, 1, 7.0));
  const auto after = propagate(tape, cfg, x, net);
  for (int i = 0; i < last; ++i) {
    bool injects = false;
    for (int j : cfg.backward_sources(i)) injects |= j >= last;
    if (!injects) EXPECT_EQ(before.h[static_cast<std::size_t>(i)].value(), after.h[static_cast<std::size_t>(i)].value()) << i;
  }
}

TEST(PropagatorTest, NonFiniteStateNamesTheNode) {
  const Cfg cfg = cfg_of("x = 1\ny = 2\n");
  Fixture f({&cfg}, 2, 2, 1);
  Tape<double> tape;
  const auto net = bind_network<double>(tape, f.store, nullptr);
  auto x = random_embeddings(tape, cfg.size(), 2, 1);
  x[2] = tape.constant(Tensor<double>(2, 1, std::nan("")));
  try {
    propagate(tape, cfg, x, net);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("node 2"), std::string::npos) << e.what();
  }
}

TEST(PropagatorTest, Deterministic) {
  const Cfg cfg = cfg_of(testing::branching_program());
  Fixture f({&cfg}, 3, 3, 2);
  auto run = [&] {
    Tape<double> tape;
    return forward_pass<double>(tape, cfg, f.vocab, f.store, nullptr, {}).scores.value();
  };
  EXPECT_EQ(run(), run());
}

TEST(HeadTest, ZeroStateAndBiasGiveHalf) {
  ParamStore<double> store;
  add_network_params(store, ModelDims{4, 2, 2});
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  const auto s = score_nodes(tape, net, {tape.constant(Tensor<double>(2, 1))});
  EXPECT_DOUBLE_EQ(s.value().data[0], 0.5);
}

TEST(HeadTest, HandComputedScore) {
  ParamStore<double> store;
  add_network_params(store, ModelDims{4, 2, 2});
  store.value("head.W_c").data = {2.0, -1.0};
  store.value("head.b_c").data = {0.5};
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  Tensor<double> h(2, 1);
  h.data = {0.25, 1.5};
  const auto s = score_nodes(tape, net, {tape.constant(h)});
  EXPECT_NEAR(s.value().data[0], 1.0 / (1.0 + std::exp(-(0.5 - 1.5 + 0.5))), 1e-15);
}

TEST(HeadTest, LargeBiasSaturates) {
  ParamStore<double> store;
  add_network_params(store, ModelDims{4, 2, 2});
  store.value("head.b_c").data = {60.0};
  Tape<double> tape;
  const auto net = bind_network<double>(tape, store, nullptr);
  EXPECT_NEAR(score_nodes(tape, net, {tape.constant(Tensor<double>(2, 1))}).value().data[0], 1.0, 1e-15);
}

TEST(ClassifyTest, ThresholdIsInclusiveAndBeginForced) {
  EXPECT_EQ(classify({0.1, 0.5, 0.49}, 0.5), (std::vector<int>{1, 1, 0}));
  EXPECT_THROW(classify({0.5}, 1.5), std::invalid_argument);
}

TEST(ClassifyTest, HigherThresholdGivesSubset) {
  const Vec s{0.9, 0.2, 0.55, 0.96, 0.71, 0.93, 0.5};
  std::vector<int> prev = classify(s, 0.5);
  for (double a : {0.7, 0.9, 0.95}) {
    const auto cur = classify(s, a);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LE(cur[i], prev[i]);
    prev = cur;
  }
}

TEST(ModelTest, LossMatchesClosedFormBce) {
  const Cfg cfg = cfg_of(testing::branching_program());
  const auto model = CoverageModel::initialize(build_vocab({&cfg}), ModelDims{static_cast<int>(build_vocab({&cfg}).size()), 4, 5},
                                               Precision::Float64, 3);
  const auto trace = execute(cfg);
  const std::vector<int> covered(trace.covered_nodes.begin(), trace.covered_nodes.end());
  const auto p = model.predict(cfg);
  const auto t = coverage_targets(cfg, covered);
  double sum = 0;
  for (std::size_t i = 0; i < t.size(); ++i) sum += t[i] * std::log(p.scores[i]) + (1 - t[i]) * std::log(1 - p.scores[i]);
  EXPECT_NEAR(model.loss(cfg, covered), -sum / static_cast<double>(t.size()), 1e-12);
}

DatasetRecord straight_line_record() { return label_program("line", "a = 1\nb = a + 2\nprint(b)\n", {}); }

TEST(ModelTest, ZeroEpochsEqualsInitialization) {
  const auto rec = straight_line_record();
  TrainConfig c;
  c.epochs = 0;
  c.embed = 4;
  c.hidden = 6;
  c.seed = 12;
  const auto trained = train({rec}, c).model;
  const auto init = CoverageModel::initialize(build_vocab({&rec.cfg}),
                                              ModelDims{static_cast<int>(build_vocab({&rec.cfg}).size()), 4, 6},
                                              Precision::Float64, 12);
  EXPECT_EQ(trained.to_json(), init.to_json());
}

TEST(ModelTest, OverfitsTrivialRecord) {
  const auto rec = straight_line_record();
  TrainConfig c;
  c.epochs = 200;
  c.embed = 8;
  c.hidden = 8;
  std::vector<EpochStats> log;
  const auto r = train({rec}, c, [&](const EpochStats& s) { log.push_back(s); });
  ASSERT_EQ(log.size(), 200u);
  EXPECT_LT(log.back().mean_loss, log.front().mean_loss);
  EXPECT_EQ(r.model.predict(rec.cfg).labels, labels_from_coverage(rec.cfg, rec.covered_nodes));
}

TEST(ModelTest, TrainingIsDeterministic) {
  GenConfig g;
  g.count = 6;
  g.seed = 2;
  const auto recs = generate(g);
  TrainConfig c;
  c.epochs = 2;
  c.embed = 4;
  c.hidden = 5;
  EXPECT_EQ(train(recs, c).model.to_json(), train(recs, c).model.to_json());
}

TEST(ModelTest, Float32Trains) {
  GenConfig g;
  g.count = 6;
  g.seed = 2;
  const auto recs = generate(g);
  TrainConfig c;
  c.epochs = 3;
  c.embed = 4;
  c.hidden = 5;
  c.precision = Precision::Float32;
  const auto r = train(recs, c);
  EXPECT_EQ(r.model.precision(), Precision::Float32);
  EXPECT_TRUE(std::isfinite(r.epochs.back().mean_loss));
}

TEST(ModelTest, BadConfigRejected) {
  TrainConfig c;
  c.hidden = 0;
  EXPECT_THROW(train({straight_line_record()}, c), std::invalid_argument);
  EXPECT_THROW(train({}, TrainConfig{}), std::invalid_argument);
}

class CheckpointTest : public ::testing::TestWithParam<Precision> {};

TEST_P(CheckpointTest, RoundTripReproducesScores) {
  GenConfig g;
  g.count = 5;
  g.seed = 8;
  const auto recs = generate(g);
  TrainConfig c;
  c.epochs = 1;
  c.embed = 4;
  c.hidden = 5;
  c.precision = GetParam();
  const auto model = train(recs, c).model;
  const auto path = std::filesystem::temp_directory_path() / ("flowcov_ckpt_" + to_string(GetParam()) + ".json");
  model.save(path);
  const auto loaded = CoverageModel::load(path);
  std::filesystem::remove(path);
  EXPECT_EQ(loaded.precision(), GetParam());
  EXPECT_EQ(loaded.vocab(), model.vocab());
  for (const auto& r : recs) EXPECT_EQ(loaded.predict(r.cfg).scores, model.predict(r.cfg).scores);
}

INSTANTIATE_TEST_SUITE_P(Precisions, CheckpointTest, ::testing::Values(Precision::Float32, Precision::Float64));

TEST(CheckpointTest, CorruptCheckpointsRejected) {
  const auto rec = straight_line_record();
  TrainConfig c;
  c.epochs = 0;
  c.embed = 2;
  c.hidden = 2;
  const Json good = train({rec}, c).model.to_json();
  Json j = good;
  j["format_version"] = 99;
  EXPECT_THROW(CoverageModel::from_json(j), DataError);
  j = good;
  j["parameters"].erase("head.W_c");
  EXPECT_THROW(CoverageModel::from_json(j), DataError);
  j = good;
  j["parameters"]["head.W_c"]["shape"] = {2, 1};
  EXPECT_THROW(CoverageModel::from_json(j), DataError);
  j = good;
  j["dims"]["vocab"] = 3;
  EXPECT_THROW(CoverageModel::from_json(j), DataError);
  j = good;
  j["precision"] = "float16";
  EXPECT_THROW(CoverageModel::from_json(j), DataError);
}

TEST(GradCheckTest, FullModelOnSmallGraph) {
  const Cfg cfg = cfg_of("i = 0\nwhile i < n:\n    if i % 2 == 0:\n        print(i)\n    i += 1\n", {{"n", Value(3)}});
  Fixture f({&cfg}, 3, 4, 10);
  const auto trace = execute(cfg);
  const std::vector<int> covered(trace.covered_nodes.begin(), trace.covered_nodes.end());
  const GradCheckResult r = check_model_gradients(f.store, f.vocab, cfg, covered);
  EXPECT_GT(r.checked, 0u);
  EXPECT_LT(r.max_rel, 1e-3) << r.worst;
  EXPECT_LT(r.mean_rel, 1e-5);
}

}  // namespace
}  // namespace flowcov
