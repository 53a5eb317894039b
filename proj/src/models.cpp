#include <istream>
#include <ostream>

#include "compsent/models.hpp"
#include "model_io.hpp"

namespace compsent {

Label argmax_label(const std::array<double, kNumLabels>& probs) {
  int best = 0;
  for (int k = 1; k < kNumLabels; ++k)
    if (probs[k] > probs[best]) best = k;
  return static_cast<Label>(best);
}

MajorityModel majority_baseline(const std::vector<Label>& y) {
  if (y.empty()) throw ModelError("no labels to vote over");
  MajorityModel m;
  std::array<double, kNumLabels> count{};
  for (Label l : y) count[static_cast<int>(l)] += 1.0;
  for (int k = 0; k < kNumLabels; ++k)
    m.distribution[k] = count[k] / static_cast<double>(y.size());
  int best = 0;
  for (int k = 1; k < kNumLabels; ++k)
    if (count[k] > count[best]) best = k;
  m.majority = static_cast<Label>(best);
  return m;
}

Prediction MajorityModel::predict(const SparseVector&) const {
  Prediction out;
  out.label = majority;
  out.probs = distribution;
  return out;
}

void MajorityModel::save_payload(std::ostream& out) const {
  out << static_cast<int>(majority) << '\n';
  for (int k = 0; k < kNumLabels; ++k) {
    detail::put_num(out, distribution[k]);
    out << (k + 1 < kNumLabels ? ' ' : '\n');
  }
}

MajorityModel MajorityModel::load_payload(std::istream& in) {
  MajorityModel m;
  long label = detail::get_int(in);
  if (label < 0 || label >= kNumLabels)
    throw ModelError("bad label value " + std::to_string(label));
  m.majority = static_cast<Label>(label);
  for (int k = 0; k < kNumLabels; ++k) m.distribution[k] = detail::get_num(in);
  return m;
}

void serialize_model(const Model& model, std::ostream& out) {
  out << "COMPSENT_MODEL 1 " << model.type() << '\n';
  model.save_payload(out);
  out << "end\n";
}

std::unique_ptr<Model> deserialize_model(std::istream& in) {
  detail::expect_token(in, "COMPSENT_MODEL");
  long version = detail::get_int(in);
  if (version != 1)
    throw ModelError("unsupported model format version " +
                     std::to_string(version));
  std::string type = detail::next_token(in);
  std::unique_ptr<Model> model;
  if (type == "gbdt")
    model = std::make_unique<GradientBoostedEnsemble>(
        GradientBoostedEnsemble::load_payload(in));
  else if (type == "logreg")
    model = std::make_unique<LogisticRegressionModel>(
        LogisticRegressionModel::load_payload(in));
  else if (type == "nb")
    model = std::make_unique<NaiveBayesModel>(NaiveBayesModel::load_payload(in));
  else if (type == "majority")
    model = std::make_unique<MajorityModel>(MajorityModel::load_payload(in));
  else
    throw ModelError("unknown model type '" + type + "'");
  detail::expect_token(in, "end");
  return model;
}

}  // namespace compsent
