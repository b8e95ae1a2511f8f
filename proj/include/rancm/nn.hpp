#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "rancm/graph.hpp"

namespace rancm {

enum class Architecture { TabularBaseline, GraphMP, GraphMPSmote };

const char* to_string(Architecture arch);
std::optional<Architecture> architecture_from_string(std::string_view text);

struct DenseLayer {
  Eigen::MatrixXd w;  // out x in
  Eigen::VectorXd b;
};

struct GraphLayer {
  Eigen::MatrixXd w_self;   // out x in
  Eigen::MatrixXd w_neigh;  // out x in
  Eigen::VectorXd b;
};

struct EncodingDescriptor {
  std::string kind;  // "graph" | "tabular"
  int feature_width = 0;
  double value_scale = kIcpValueScale;
};

// Trainable classifier over 4 classes. GraphMP variants run two
// message-passing rounds (self + neighbour-mean transforms, softplus) and a
// mean readout; the tabular baseline runs the same dense stack on a flat
// feature vector. The output layer is shared shape-wise: softmax over 4.
struct ClassifierModel {
  Architecture arch = Architecture::GraphMP;
  int hidden = 64;
  int classes = 4;
  EncodingDescriptor enc;
  std::vector<GraphLayer> graph_layers;
  std::vector<DenseLayer> dense_layers;
  DenseLayer out;
};

ClassifierModel init_model(Architecture arch, int feature_width, int hidden,
                           std::uint64_t seed);

// Probabilities over the 4 classes; entries sum to 1.
Eigen::VectorXd forward(const ClassifierModel& model, const HeteroGraph& g);
Eigen::VectorXd forward(const ClassifierModel& model, const Eigen::VectorXd& flat);

int predict(const ClassifierModel& model, const HeteroGraph& g);
int predict(const ClassifierModel& model, const Eigen::VectorXd& flat);

// Gradient accumulator matching the model's parameter layout.
struct Gradients {
  std::vector<GraphLayer> graph_layers;
  std::vector<DenseLayer> dense_layers;
  DenseLayer out;

  static Gradients zeros_like(const ClassifierModel& model);
  void add_scaled(const Gradients& other, double scale);
  void scale(double factor);
};

// Cross-entropy of one sample plus parameter gradients (accumulated into
// `grads`). Returns the loss.
double loss_and_gradients(const ClassifierModel& model, const HeteroGraph& g,
                          int label, Gradients& grads);
double loss_and_gradients(const ClassifierModel& model,
                          const Eigen::VectorXd& flat, int label,
                          Gradients& grads);

// Max relative error between analytic gradients and central finite
// differences (step 1e-5) over every parameter.
double gradient_check(const ClassifierModel& model, const HeteroGraph& g, int label);
double gradient_check(const ClassifierModel& model, const Eigen::VectorXd& flat, int label);

// Training set in the representation the architecture consumes.
struct TrainData {
  std::vector<HeteroGraph> graphs;
  std::vector<Eigen::VectorXd> flats;
  std::vector<int> labels;

  bool is_graph() const { return !graphs.empty(); }
  std::size_t size() const { return labels.size(); }
};

struct TrainConfig {
  int epochs = 20;
  int batch = 64;
  double lr = 0.05;
  double momentum = 0.9;
  int hidden = 64;
  std::uint64_t seed = 1;
};

struct TrainOutcome {
  ClassifierModel model;
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  int epochs_run = 0;
};

// Mini-batch gradient descent with momentum; deterministic per seed.
// Throws std::runtime_error if the loss turns non-finite.
TrainOutcome train(const TrainData& data, Architecture arch, const TrainConfig& cfg);

std::string model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const std::string& text);
void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

// Batched inference wall-clock, per sample. Warm-up batches run first; the
// reported numbers aggregate `trials` repetitions of a full pass.
struct LatencyStats {
  double mean_us = 0.0;
  double se_us = 0.0;
  double median_us = 0.0;
};

LatencyStats measure_latency(const ClassifierModel& model, const TrainData& samples,
                             int batch, int trials, int warmup_batches,
                             int threads);

}  // namespace rancm
