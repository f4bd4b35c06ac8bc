#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "codemap/post.hpp"
#include "codemap/text.hpp"

namespace codemap {

enum class QuestionLabel { Debug = 0, NeedToKnow = 1, HowToDoIt = 2, SeekingDifferentSolution = 3 };
inline constexpr int kNumLabels = 4;

const char* label_name(QuestionLabel label);
QuestionLabel label_from_name(const std::string& name);  // throws on unknown label

struct LabeledQuestion {
    std::string text;
    QuestionLabel label;
};

// `label<TAB>text`, one question per line.
std::vector<LabeledQuestion> load_labeled_questions(const std::string& path);

// Bag of lemmas, stop words removed.
std::vector<std::string> question_features(const std::string& text, const Preprocessor& pre);

class BayesModel {
public:
    // Multinomial model with additive smoothing. Every class must be present.
    static BayesModel train(const std::vector<LabeledQuestion>& data, double alpha,
                            const Preprocessor& pre);

    QuestionLabel predict(const std::string& text, const Preprocessor& pre) const;
    // Per-class posterior probabilities (sums to 1).
    std::array<double, kNumLabels> posteriors(const std::string& text,
                                              const Preprocessor& pre) const;

    double alpha() const { return alpha_; }
    const std::map<std::string, std::array<double, kNumLabels>>& log_likelihoods() const {
        return log_likelihood_;
    }
    std::array<double, kNumLabels> log_priors() const { return log_prior_; }

    std::string serialize() const;
    static BayesModel parse(const std::string& text);

private:
    double alpha_ = 1.0;
    std::array<double, kNumLabels> log_prior_{};
    // vocabulary word -> per-class log likelihood
    std::map<std::string, std::array<double, kNumLabels>> log_likelihood_;
};

struct LogisticHyperparams {
    double learning_rate = 0.5;
    int epochs = 500;
    std::uint64_t seed = 1;
};

class LogisticModel {
public:
    // One-vs-rest full-batch gradient descent over bag-of-word counts.
    // Deterministic given seed and data order. Throws std::runtime_error when
    // the loss diverges and std::invalid_argument when fewer than 2 classes
    // are present.
    static LogisticModel train(const std::vector<LabeledQuestion>& data,
                               const LogisticHyperparams& hp, const Preprocessor& pre);

    QuestionLabel predict(const std::string& text, const Preprocessor& pre) const;
    double training_accuracy(const std::vector<LabeledQuestion>& data,
                             const Preprocessor& pre) const;

    const std::vector<std::string>& vocabulary() const { return vocab_; }
    const std::vector<std::array<double, kNumLabels>>& weights() const { return weights_; }
    std::array<double, kNumLabels> bias() const { return bias_; }

    std::string serialize() const;
    static LogisticModel parse(const std::string& text);

private:
    std::vector<std::string> vocab_;  // sorted
    std::vector<std::array<double, kNumLabels>> weights_;  // per word
    std::array<double, kNumLabels> bias_{};

    std::vector<double> featurize(const std::string& text, const Preprocessor& pre) const;
};

// Mean binary cross-entropy and its gradient for one one-vs-rest classifier;
// exposed so the analytic gradient can be checked against finite differences.
double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<double>& w, double b);
void logistic_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& w, double b, std::vector<double>& grad_w,
                       double& grad_b);

// Keeps questions predicted HowToDoIt (with their answers); order preserved.
template <typename Model>
std::vector<Post> filter_howto(const std::vector<Post>& posts, const Model& model,
                               const Preprocessor& pre);

}  // namespace codemap
