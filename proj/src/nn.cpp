#include "rancm/nn.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rancm/bench.hpp"
#include "rancm/rng.hpp"

namespace rancm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* to_string(Architecture arch) {
  switch (arch) {
    case Architecture::TabularBaseline: return "tabular";
    case Architecture::GraphMP: return "graphmp";
    case Architecture::GraphMPSmote: return "graphmp-smote";
  }
  return "graphmp";
}

std::optional<Architecture> architecture_from_string(std::string_view text) {
  if (text == "tabular") return Architecture::TabularBaseline;
  if (text == "graphmp") return Architecture::GraphMP;
  if (text == "graphmp-smote") return Architecture::GraphMPSmote;
  return std::nullopt;
}

namespace {

constexpr int kMessagePassingLayers = 2;
constexpr int kDenseLayers = 2;

// Stable softplus, written so the matrix form vectorizes.
inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

inline double softplus_grad(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline MatrixXd softplus(const MatrixXd& z) {
  return (z.array().max(0.0) + (-z.array().abs()).exp().log1p()).matrix();
}

inline MatrixXd softplus_grad(const MatrixXd& z) {
  return z.unaryExpr([](double v) { return softplus_grad(v); });
}

VectorXd softmax(const VectorXd& logits) {
  const double m = logits.maxCoeff();
  VectorXd e = (logits.array() - m).exp();
  return e / e.sum();
}

MatrixXd xavier(int rows, int cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  MatrixXd w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w(i, j) = uniform_in(rng, -limit, limit);
  return w;
}

// Node features as an N x F matrix.
MatrixXd feature_matrix(const HeteroGraph& g) {
  const int n = g.node_count();
  MatrixXd h(n, kGraphFeatureWidth);
  for (int i = 0; i < n; ++i)
    for (int f = 0; f < kGraphFeatureWidth; ++f)
      h(i, f) = g.node_features(i)[f];
  return h;
}

Eigen::VectorXi degrees(const HeteroGraph& g) {
  Eigen::VectorXi deg = Eigen::VectorXi::Zero(g.node_count());
  for (auto [a, b] : g.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

// Neighbour-mean rows; isolated nodes aggregate to zero.
MatrixXd neighbor_mean(const HeteroGraph& g, const MatrixXd& h,
                       const Eigen::VectorXi& deg) {
  MatrixXd m = MatrixXd::Zero(h.rows(), h.cols());
  for (auto [a, b] : g.edges) {
    m.row(a) += h.row(b);
    m.row(b) += h.row(a);
  }
  for (int i = 0; i < h.rows(); ++i)
    if (deg[i] > 0) m.row(i) /= static_cast<double>(deg[i]);
  return m;
}

struct GraphTrace {
  MatrixXd h0;
  Eigen::VectorXi deg;
  std::vector<MatrixXd> m;  // neighbour means per layer input
  std::vector<MatrixXd> z;  // pre-activations
  std::vector<MatrixXd> h;  // activations
  VectorXd readout;
  VectorXd probs;
};

GraphTrace graph_forward(const ClassifierModel& model, const HeteroGraph& g) {
  GraphTrace tr;
  tr.h0 = feature_matrix(g);
  tr.deg = degrees(g);
  const MatrixXd* cur = &tr.h0;
  for (const GraphLayer& layer : model.graph_layers) {
    tr.m.push_back(neighbor_mean(g, *cur, tr.deg));
    MatrixXd z = (*cur) * layer.w_self.transpose() +
                 tr.m.back() * layer.w_neigh.transpose();
    z.rowwise() += layer.b.transpose();
    tr.z.push_back(std::move(z));
    tr.h.push_back(softplus(tr.z.back()));
    cur = &tr.h.back();
  }
  tr.readout = cur->colwise().mean().transpose();
  tr.probs = softmax(model.out.w * tr.readout + model.out.b);
  return tr;
}

struct DenseTrace {
  VectorXd input;
  std::vector<VectorXd> z;
  std::vector<VectorXd> h;
  VectorXd probs;
};

DenseTrace dense_forward(const ClassifierModel& model, const VectorXd& x) {
  DenseTrace tr;
  tr.input = x;
  const VectorXd* cur = &tr.input;
  for (const DenseLayer& layer : model.dense_layers) {
    tr.z.push_back(layer.w * (*cur) + layer.b);
    tr.h.push_back(tr.z.back().unaryExpr([](double v) { return softplus(v); }));
    cur = &tr.h.back();
  }
  tr.probs = softmax(model.out.w * (*cur) + model.out.b);
  return tr;
}

inline double cross_entropy(const VectorXd& probs, int label) {
  return -std::log(std::max(probs[label], 1e-300));
}

double loss_only(const ClassifierModel& model, const HeteroGraph& g, int label) {
  return cross_entropy(graph_forward(model, g).probs, label);
}

double loss_only(const ClassifierModel& model, const VectorXd& x, int label) {
  return cross_entropy(dense_forward(model, x).probs, label);
}

}  // namespace

ClassifierModel init_model(Architecture arch, int feature_width, int hidden,
                           std::uint64_t seed) {
  ClassifierModel model;
  model.arch = arch;
  model.hidden = hidden;
  model.enc.feature_width = feature_width;
  Rng rng(seed);

  if (arch == Architecture::TabularBaseline) {
    model.enc.kind = "tabular";
    int in = feature_width;
    for (int i = 0; i < kDenseLayers; ++i) {
      model.dense_layers.push_back(
          {xavier(hidden, in, rng), VectorXd::Zero(hidden)});
      in = hidden;
    }
  } else {
    model.enc.kind = "graph";
    int in = feature_width;
    for (int i = 0; i < kMessagePassingLayers; ++i) {
      model.graph_layers.push_back({xavier(hidden, in, rng),
                                    xavier(hidden, in, rng),
                                    VectorXd::Zero(hidden)});
      in = hidden;
    }
  }
  model.out = {xavier(model.classes, hidden, rng), VectorXd::Zero(model.classes)};
  return model;
}

Eigen::VectorXd forward(const ClassifierModel& model, const HeteroGraph& g) {
  if (model.enc.kind != "graph")
    throw std::invalid_argument("model does not consume graphs");
  if (feature_matrix(g).cols() != model.graph_layers.front().w_self.cols())
    throw std::invalid_argument("graph feature width does not match model");
  return graph_forward(model, g).probs;
}

Eigen::VectorXd forward(const ClassifierModel& model, const VectorXd& flat) {
  if (model.enc.kind != "tabular")
    throw std::invalid_argument("model does not consume flat rows");
  if (flat.size() != model.dense_layers.front().w.cols())
    throw std::invalid_argument("feature width does not match model");
  return dense_forward(model, flat).probs;
}

int predict(const ClassifierModel& model, const HeteroGraph& g) {
  int best = 0;
  graph_forward(model, g).probs.maxCoeff(&best);
  return best;
}

int predict(const ClassifierModel& model, const VectorXd& flat) {
  int best = 0;
  dense_forward(model, flat).probs.maxCoeff(&best);
  return best;
}

Gradients Gradients::zeros_like(const ClassifierModel& model) {
  Gradients g;
  for (const GraphLayer& l : model.graph_layers)
    g.graph_layers.push_back({MatrixXd::Zero(l.w_self.rows(), l.w_self.cols()),
                              MatrixXd::Zero(l.w_neigh.rows(), l.w_neigh.cols()),
                              VectorXd::Zero(l.b.size())});
  for (const DenseLayer& l : model.dense_layers)
    g.dense_layers.push_back(
        {MatrixXd::Zero(l.w.rows(), l.w.cols()), VectorXd::Zero(l.b.size())});
  g.out = {MatrixXd::Zero(model.out.w.rows(), model.out.w.cols()),
           VectorXd::Zero(model.out.b.size())};
  return g;
}

void Gradients::add_scaled(const Gradients& other, double s) {
  for (std::size_t i = 0; i < graph_layers.size(); ++i) {
    graph_layers[i].w_self += s * other.graph_layers[i].w_self;
    graph_layers[i].w_neigh += s * other.graph_layers[i].w_neigh;
    graph_layers[i].b += s * other.graph_layers[i].b;
  }
  for (std::size_t i = 0; i < dense_layers.size(); ++i) {
    dense_layers[i].w += s * other.dense_layers[i].w;
    dense_layers[i].b += s * other.dense_layers[i].b;
  }
  out.w += s * other.out.w;
  out.b += s * other.out.b;
}

void Gradients::scale(double factor) {
  for (auto& l : graph_layers) {
    l.w_self *= factor;
    l.w_neigh *= factor;
    l.b *= factor;
  }
  for (auto& l : dense_layers) {
    l.w *= factor;
    l.b *= factor;
  }
  out.w *= factor;
  out.b *= factor;
}

double loss_and_gradients(const ClassifierModel& model, const HeteroGraph& g,
                          int label, Gradients& grads) {
  GraphTrace tr = graph_forward(model, g);
  const int n = g.node_count();
  const int layers = static_cast<int>(model.graph_layers.size());

  VectorXd dlogits = tr.probs;
  dlogits[label] -= 1.0;
  grads.out.w += dlogits * tr.readout.transpose();
  grads.out.b += dlogits;

  VectorXd dr = model.out.w.transpose() * dlogits;
  MatrixXd dh =
      VectorXd::Constant(n, 1.0 / static_cast<double>(n)) * dr.transpose();

  for (int l = layers - 1; l >= 0; --l) {
    const MatrixXd& h_prev = l == 0 ? tr.h0 : tr.h[l - 1];
    const MatrixXd dz = dh.cwiseProduct(softplus_grad(tr.z[l]));
    grads.graph_layers[l].w_self += dz.transpose() * h_prev;
    grads.graph_layers[l].w_neigh += dz.transpose() * tr.m[l];
    grads.graph_layers[l].b += dz.colwise().sum().transpose();

    if (l > 0) {
      const GraphLayer& layer = model.graph_layers[l];
      MatrixXd back_self = dz * layer.w_self;
      MatrixXd back_neigh = dz * layer.w_neigh;
      dh = std::move(back_self);
      // Transpose of the mean aggregation: each node feeds its neighbours,
      // scaled by the receiver's degree.
      for (auto [a, bn] : g.edges) {
        dh.row(bn) += back_neigh.row(a) / static_cast<double>(tr.deg[a]);
        dh.row(a) += back_neigh.row(bn) / static_cast<double>(tr.deg[bn]);
      }
    }
  }
  return cross_entropy(tr.probs, label);
}

double loss_and_gradients(const ClassifierModel& model, const VectorXd& flat,
                          int label, Gradients& grads) {
  DenseTrace tr = dense_forward(model, flat);
  const int layers = static_cast<int>(model.dense_layers.size());

  VectorXd dlogits = tr.probs;
  dlogits[label] -= 1.0;
  grads.out.w += dlogits * tr.h.back().transpose();
  grads.out.b += dlogits;

  VectorXd dh = model.out.w.transpose() * dlogits;
  for (int l = layers - 1; l >= 0; --l) {
    const VectorXd& h_prev = l == 0 ? tr.input : tr.h[l - 1];
    const VectorXd dz = dh.cwiseProduct(
        tr.z[l].unaryExpr([](double v) { return softplus_grad(v); }));
    grads.dense_layers[l].w += dz * h_prev.transpose();
    grads.dense_layers[l].b += dz;
    if (l > 0) dh = model.dense_layers[l].w.transpose() * dz;
  }
  return cross_entropy(tr.probs, label);
}

namespace {

// Flat views over every trainable scalar, matching model <-> gradients.
std::vector<std::pair<double*, std::size_t>> parameter_blocks(ClassifierModel& m) {
  std::vector<std::pair<double*, std::size_t>> blocks;
  for (auto& l : m.graph_layers) {
    blocks.emplace_back(l.w_self.data(), l.w_self.size());
    blocks.emplace_back(l.w_neigh.data(), l.w_neigh.size());
    blocks.emplace_back(l.b.data(), l.b.size());
  }
  for (auto& l : m.dense_layers) {
    blocks.emplace_back(l.w.data(), l.w.size());
    blocks.emplace_back(l.b.data(), l.b.size());
  }
  blocks.emplace_back(m.out.w.data(), m.out.w.size());
  blocks.emplace_back(m.out.b.data(), m.out.b.size());
  return blocks;
}

std::vector<std::pair<const double*, std::size_t>> gradient_blocks(
    const Gradients& g) {
  std::vector<std::pair<const double*, std::size_t>> blocks;
  for (auto& l : g.graph_layers) {
    blocks.emplace_back(l.w_self.data(), l.w_self.size());
    blocks.emplace_back(l.w_neigh.data(), l.w_neigh.size());
    blocks.emplace_back(l.b.data(), l.b.size());
  }
  for (auto& l : g.dense_layers) {
    blocks.emplace_back(l.w.data(), l.w.size());
    blocks.emplace_back(l.b.data(), l.b.size());
  }
  blocks.emplace_back(g.out.w.data(), g.out.w.size());
  blocks.emplace_back(g.out.b.data(), g.out.b.size());
  return blocks;
}

template <typename Sample>
double gradient_check_impl(const ClassifierModel& model, const Sample& sample,
                           int label) {
  Gradients grads = Gradients::zeros_like(model);
  loss_and_gradients(model, sample, label, grads);

  ClassifierModel probe = model;
  auto params = parameter_blocks(probe);
  auto analytic = gradient_blocks(grads);

  constexpr double kStep = 1e-5;
  double worst = 0.0;
  for (std::size_t b = 0; b < params.size(); ++b) {
    for (std::size_t i = 0; i < params[b].second; ++i) {
      double& w = params[b].first[i];
      const double saved = w;
      w = saved + kStep;
      const double up = loss_only(probe, sample, label);
      w = saved - kStep;
      const double down = loss_only(probe, sample, label);
      w = saved;
      const double numeric = (up - down) / (2.0 * kStep);
      const double a = analytic[b].first[i];
      const double denom = std::max(1e-8, std::abs(a) + std::abs(numeric));
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
  }
  return worst;
}

}  // namespace

double gradient_check(const ClassifierModel& model, const HeteroGraph& g,
                      int label) {
  return gradient_check_impl(model, g, label);
}

double gradient_check(const ClassifierModel& model, const VectorXd& flat,
                      int label) {
  return gradient_check_impl(model, flat, label);
}

TrainOutcome train(const TrainData& data, Architecture arch,
                   const TrainConfig& cfg) {
  if (data.size() == 0) throw std::invalid_argument("empty training set");
  const bool graph_mode = arch != Architecture::TabularBaseline;
  if (graph_mode && data.graphs.size() != data.size())
    throw std::invalid_argument("graph samples missing");
  if (!graph_mode && data.flats.size() != data.size())
    throw std::invalid_argument("flat samples missing");

  const int feature_width = graph_mode
                                ? kGraphFeatureWidth
                                : static_cast<int>(data.flats.front().size());

  TrainOutcome out;
  out.model = init_model(arch, feature_width, cfg.hidden, cfg.seed);

  Gradients velocity = Gradients::zeros_like(out.model);
  Gradients grads = Gradients::zeros_like(out.model);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates with the run's generator keeps epochs reproducible.
    for (std::size_t i = data.size(); i > 1; --i) {
      std::size_t j = uniform_index(rng, i);
      std::swap(order[i - 1], order[j]);
    }

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < data.size(); start += cfg.batch) {
      const std::size_t end = std::min(data.size(), start + cfg.batch);
      grads.scale(0.0);
      for (std::size_t i = start; i < end; ++i) {
        const std::size_t idx = order[i];
        epoch_loss += graph_mode
                          ? loss_and_gradients(out.model, data.graphs[idx],
                                               data.labels[idx], grads)
                          : loss_and_gradients(out.model, data.flats[idx],
                                               data.labels[idx], grads);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      velocity.scale(cfg.momentum);
      velocity.add_scaled(grads, inv);

      auto params = parameter_blocks(out.model);
      auto delta = gradient_blocks(velocity);
      for (std::size_t b = 0; b < params.size(); ++b)
        for (std::size_t i = 0; i < params[b].second; ++i)
          params[b].first[i] -= cfg.lr * delta[b].first[i];
    }

    out.final_loss = epoch_loss / static_cast<double>(data.size());
    if (!std::isfinite(out.final_loss))
      throw std::runtime_error("training diverged: loss is not finite");
    out.epochs_run = epoch + 1;
  }

  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int pred = graph_mode ? predict(out.model, data.graphs[i])
                                : predict(out.model, data.flats[i]);
    if (pred == data.labels[i]) ++correct;
  }
  out.train_accuracy =
      static_cast<double>(correct) / static_cast<double>(data.size());
  return out;
}

namespace {

using nlohmann::json;

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const json& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  return m;
}

json vector_to_json(const VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

VectorXd vector_from_json(const json& arr) {
  VectorXd v(arr.size());
  for (int i = 0; i < static_cast<int>(arr.size()); ++i)
    v[i] = arr[i].get<double>();
  return v;
}

}  // namespace

std::string model_to_json(const ClassifierModel& model) {
  json j;
  j["format_version"] = 1;
  j["arch"] = to_string(model.arch);
  j["hidden"] = model.hidden;
  j["classes"] = model.classes;
  j["encoding"] = {{"kind", model.enc.kind},
                   {"feature_width", model.enc.feature_width},
                   {"value_scale", model.enc.value_scale}};
  json layers = json::array();
  for (const GraphLayer& l : model.graph_layers)
    layers.push_back({{"w_self", matrix_to_json(l.w_self)},
                      {"w_neigh", matrix_to_json(l.w_neigh)},
                      {"b", vector_to_json(l.b)}});
  j["graph_layers"] = std::move(layers);
  json dense = json::array();
  for (const DenseLayer& l : model.dense_layers)
    dense.push_back({{"w", matrix_to_json(l.w)}, {"b", vector_to_json(l.b)}});
  j["dense_layers"] = std::move(dense);
  j["out"] = {{"w", matrix_to_json(model.out.w)},
              {"b", vector_to_json(model.out.b)}};
  return j.dump();
}

ClassifierModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  ClassifierModel model;
  auto arch = architecture_from_string(j.at("arch").get<std::string>());
  if (!arch) throw std::runtime_error("unknown architecture in model file");
  model.arch = *arch;
  model.hidden = j.at("hidden").get<int>();
  model.classes = j.at("classes").get<int>();
  model.enc.kind = j.at("encoding").at("kind").get<std::string>();
  model.enc.feature_width = j.at("encoding").at("feature_width").get<int>();
  model.enc.value_scale = j.at("encoding").at("value_scale").get<double>();
  for (const auto& l : j.at("graph_layers"))
    model.graph_layers.push_back({matrix_from_json(l.at("w_self")),
                                  matrix_from_json(l.at("w_neigh")),
                                  vector_from_json(l.at("b"))});
  for (const auto& l : j.at("dense_layers"))
    model.dense_layers.push_back(
        {matrix_from_json(l.at("w")), vector_from_json(l.at("b"))});
  model.out = {matrix_from_json(j.at("out").at("w")),
               vector_from_json(j.at("out").at("b"))};
  return model;
}

void save_model(const ClassifierModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << model_to_json(model) << "\n";
}

ClassifierModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

namespace {

using Eigen::MatrixXf;

inline MatrixXf softplus_f(const MatrixXf& z) {
  return (z.array().max(0.0f) + (-z.array().abs()).exp().log1p()).matrix();
}

// Rows stacked into ready-to-multiply batch matrices plus the weights cast
// once to single precision; batched deployment runs in float. Stacking
// happens outside the timed region; the timed pass is the dense math and
// argmax.
struct BatchedFlats {
  std::vector<MatrixXf> chunks;
  MatrixXf w1, w2, wo;
  Eigen::RowVectorXf b1, b2, bo;
  std::size_t rows = 0;
};

BatchedFlats stack_flats(const ClassifierModel& model, const TrainData& samples,
                         int batch) {
  BatchedFlats out;
  out.rows = samples.flats.size();
  for (std::size_t start = 0; start < out.rows;
       start += static_cast<std::size_t>(batch)) {
    const std::size_t end =
        std::min(out.rows, start + static_cast<std::size_t>(batch));
    MatrixXf x(static_cast<int>(end - start), samples.flats.front().size());
    for (std::size_t r = start; r < end; ++r)
      x.row(static_cast<int>(r - start)) = samples.flats[r].transpose().cast<float>();
    out.chunks.push_back(std::move(x));
  }
  out.w1 = model.dense_layers[0].w.transpose().cast<float>();
  out.b1 = model.dense_layers[0].b.transpose().cast<float>();
  out.w2 = model.dense_layers[1].w.transpose().cast<float>();
  out.b2 = model.dense_layers[1].b.transpose().cast<float>();
  out.wo = model.out.w.transpose().cast<float>();
  out.bo = model.out.b.transpose().cast<float>();
  return out;
}

// One full inference pass; returns a checksum so the work cannot be elided.
double inference_pass(const ClassifierModel& model, const TrainData& samples,
                      const BatchedFlats& batched, int threads) {
  std::atomic<double> checksum{0.0};
  const bool tabular = model.enc.kind == "tabular";
  const std::size_t units = tabular ? batched.chunks.size() : samples.size();

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    double local = 0.0;
    if (tabular) {
      for (std::size_t c = lo; c < hi; ++c) {
        const MatrixXf& x = batched.chunks[c];
        MatrixXf h = softplus_f((x * batched.w1).rowwise() + batched.b1);
        h = softplus_f((h * batched.w2).rowwise() + batched.b2);
        MatrixXf logits = (h * batched.wo).rowwise() + batched.bo;
        for (int r = 0; r < logits.rows(); ++r) {
          int best = 0;
          logits.row(r).maxCoeff(&best);
          local += best;
        }
      }
    } else {
      for (std::size_t i = lo; i < hi; ++i)
        local += predict(model, samples.graphs[i]);
    }
    double expected = checksum.load();
    while (!checksum.compare_exchange_weak(expected, expected + local)) {
    }
  };

  if (threads <= 1) {
    run_range(0, units);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (units + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(units, static_cast<std::size_t>(t) * chunk);
      const std::size_t hi = std::min(units, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return checksum.load();
}

}  // namespace

LatencyStats measure_latency(const ClassifierModel& model,
                             const TrainData& samples, int batch, int trials,
                             int warmup_batches, int threads) {
  if (samples.size() == 0) throw std::invalid_argument("no samples to measure");
  using clock = std::chrono::steady_clock;

  BatchedFlats batched;
  if (model.enc.kind == "tabular") batched = stack_flats(model, samples, batch);

  // Warm-up: run enough passes to cover the requested number of batches.
  const std::size_t batches_per_pass =
      (samples.size() + batch - 1) / static_cast<std::size_t>(batch);
  double sink = 0.0;
  for (std::size_t done = 0; done < static_cast<std::size_t>(warmup_batches);
       done += batches_per_pass)
    sink += inference_pass(model, samples, batched, threads);

  std::vector<double> per_sample_us(trials);
  for (int t = 0; t < trials; ++t) {
    const auto before = clock::now();
    sink += inference_pass(model, samples, batched, threads);
    const auto after = clock::now();
    const double ns = static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(after - before)
            .count());
    per_sample_us[t] = ns / 1000.0 / static_cast<double>(samples.size());
  }
  do_not_optimize(sink);

  LatencyStats stats;
  double sum = 0.0;
  for (double v : per_sample_us) sum += v;
  stats.mean_us = sum / trials;
  double var = 0.0;
  for (double v : per_sample_us) var += (v - stats.mean_us) * (v - stats.mean_us);
  stats.se_us = trials > 1 ? std::sqrt(var / (trials - 1) / trials) : 0.0;
  std::sort(per_sample_us.begin(), per_sample_us.end());
  stats.median_us = per_sample_us[per_sample_us.size() / 2];
  return stats;
}

}  // namespace rancm
