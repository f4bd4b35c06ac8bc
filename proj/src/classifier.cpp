#include "codemap/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "codemap/util.hpp"

namespace codemap {

const char* label_name(QuestionLabel label) {
    switch (label) {
        case QuestionLabel::Debug: return "debug";
        case QuestionLabel::NeedToKnow: return "need_to_know";
        case QuestionLabel::HowToDoIt: return "how_to_do_it";
        case QuestionLabel::SeekingDifferentSolution: return "seeking_different_solution";
    }
    return "?";
}

QuestionLabel label_from_name(const std::string& name) {
    for (int i = 0; i < kNumLabels; ++i) {
        if (name == label_name(static_cast<QuestionLabel>(i)))
            return static_cast<QuestionLabel>(i);
    }
    throw std::runtime_error("unknown question label: " + name);
}

std::vector<LabeledQuestion> load_labeled_questions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open training data: " + path);
    std::vector<LabeledQuestion> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("missing tab at line " + std::to_string(lineno) + " in " + path);
        LabeledQuestion q;
        q.label = label_from_name(std::string(trim(line.substr(0, tab))));
        q.text = line.substr(tab + 1);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<std::string> question_features(const std::string& text, const Preprocessor& pre) {
    std::vector<std::string> out;
    for (const auto& tok : pre.preprocess(text).tokens)
        if (!tok.is_stopword) out.push_back(tok.lemma);
    return out;
}

// ---------- Naive Bayes ----------

BayesModel BayesModel::train(const std::vector<LabeledQuestion>& data, double alpha,
                             const Preprocessor& pre) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    std::array<std::size_t, kNumLabels> class_docs{};
    std::array<std::size_t, kNumLabels> class_words{};
    std::map<std::string, std::array<std::size_t, kNumLabels>> counts;
    for (const auto& q : data) {
        int c = static_cast<int>(q.label);
        ++class_docs[c];
        for (const auto& w : question_features(q.text, pre)) {
            ++counts[w][c];
            ++class_words[c];
        }
    }
    for (int c = 0; c < kNumLabels; ++c) {
        if (class_docs[c] == 0)
            throw std::invalid_argument(std::string("class missing from training data: ") +
                                        label_name(static_cast<QuestionLabel>(c)));
    }

    BayesModel model;
    model.alpha_ = alpha;
    const double total = static_cast<double>(data.size());
    const double vocab = static_cast<double>(counts.size());
    for (int c = 0; c < kNumLabels; ++c)
        model.log_prior_[c] = std::log(static_cast<double>(class_docs[c]) / total);
    for (const auto& [word, per_class] : counts) {
        std::array<double, kNumLabels> ll{};
        for (int c = 0; c < kNumLabels; ++c) {
            ll[c] = std::log((static_cast<double>(per_class[c]) + alpha) /
                             (static_cast<double>(class_words[c]) + alpha * vocab));
        }
        model.log_likelihood_[word] = ll;
    }
    return model;
}

std::array<double, kNumLabels> BayesModel::posteriors(const std::string& text,
                                                      const Preprocessor& pre) const {
    std::array<double, kNumLabels> scores = log_prior_;
    for (const auto& w : question_features(text, pre)) {
        auto it = log_likelihood_.find(w);
        if (it == log_likelihood_.end()) continue;  // unseen word carries no evidence
        for (int c = 0; c < kNumLabels; ++c) scores[c] += it->second[c];
    }
    double max_score = *std::max_element(scores.begin(), scores.end());
    double denom = 0.0;
    std::array<double, kNumLabels> out{};
    for (int c = 0; c < kNumLabels; ++c) {
        out[c] = std::exp(scores[c] - max_score);
        denom += out[c];
    }
    for (int c = 0; c < kNumLabels; ++c) out[c] /= denom;
    return out;
}

QuestionLabel BayesModel::predict(const std::string& text, const Preprocessor& pre) const {
    auto p = posteriors(text, pre);
    int best = 0;
    for (int c = 1; c < kNumLabels; ++c)
        if (p[c] > p[best]) best = c;
    return static_cast<QuestionLabel>(best);
}

std::string BayesModel::serialize() const {
    std::ostringstream out;
    out << "#codemap bayes-model v1\n";
    out << "alpha " << format_double(alpha_) << "\n";
    out << "priors";
    for (double p : log_prior_) out << ' ' << format_double(p);
    out << "\n";
    for (const auto& [word, ll] : log_likelihood_) {
        out << word;
        for (double v : ll) out << '\t' << format_double(v);
        out << "\n";
    }
    return out.str();
}

BayesModel BayesModel::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "#codemap bayes-model v1")
        throw std::runtime_error("not a bayes model file");
    BayesModel model;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (line.rfind("alpha ", 0) == 0) {
            model.alpha_ = std::strtod(line.c_str() + 6, nullptr);
        } else if (line.rfind("priors", 0) == 0) {
            auto fields = split_ws(line);
            if (fields.size() != kNumLabels + 1) throw std::runtime_error("bad priors record");
            for (int c = 0; c < kNumLabels; ++c)
                model.log_prior_[c] = std::strtod(fields[c + 1].c_str(), nullptr);
        } else {
            auto fields = split(line, '\t');
            if (fields.size() != kNumLabels + 1)
                throw std::runtime_error("bad likelihood record: " + line);
            std::array<double, kNumLabels> ll{};
            for (int c = 0; c < kNumLabels; ++c)
                ll[c] = std::strtod(fields[c + 1].c_str(), nullptr);
            model.log_likelihood_[fields[0]] = ll;
        }
    }
    return model;
}

// ---------- Logistic regression ----------

namespace {
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<double>& w, double b) {
    const double eps = 1e-12;
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        double p = sigmoid(z);
        loss += y[i] ? -std::log(p + eps) : -std::log(1.0 - p + eps);
    }
    return loss / static_cast<double>(x.size());
}

void logistic_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& w, double b, std::vector<double>& grad_w,
                       double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        double err = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += err * x[i][j];
        grad_b += err;
    }
    const double n = static_cast<double>(x.size());
    for (auto& g : grad_w) g /= n;
    grad_b /= n;
}

std::vector<double> LogisticModel::featurize(const std::string& text,
                                             const Preprocessor& pre) const {
    std::vector<double> x(vocab_.size(), 0.0);
    for (const auto& w : question_features(text, pre)) {
        auto it = std::lower_bound(vocab_.begin(), vocab_.end(), w);
        if (it != vocab_.end() && *it == w) x[static_cast<std::size_t>(it - vocab_.begin())] += 1.0;
    }
    return x;
}

LogisticModel LogisticModel::train(const std::vector<LabeledQuestion>& data,
                                   const LogisticHyperparams& hp, const Preprocessor& pre) {
    std::set<int> classes;
    for (const auto& q : data) classes.insert(static_cast<int>(q.label));
    if (classes.size() < 2)
        throw std::invalid_argument("logistic training needs at least 2 classes");

    LogisticModel model;
    std::set<std::string> vocab;
    for (const auto& q : data)
        for (const auto& w : question_features(q.text, pre)) vocab.insert(w);
    model.vocab_.assign(vocab.begin(), vocab.end());

    std::vector<std::vector<double>> x;
    x.reserve(data.size());
    for (const auto& q : data) x.push_back(model.featurize(q.text, pre));

    std::mt19937_64 rng(hp.seed);
    std::uniform_real_distribution<double> init(-0.01, 0.01);
    model.weights_.assign(model.vocab_.size(), {});
    for (auto& wv : model.weights_)
        for (int c = 0; c < kNumLabels; ++c) wv[c] = init(rng);
    for (int c = 0; c < kNumLabels; ++c) model.bias_[c] = init(rng);

    std::vector<double> w(model.vocab_.size());
    std::vector<double> grad_w;
    for (int c = 0; c < kNumLabels; ++c) {
        if (!classes.count(c)) {
            for (std::size_t j = 0; j < w.size(); ++j) model.weights_[j][c] = 0.0;
            model.bias_[c] = -20.0;  // class absent: effectively never predicted
            continue;
        }
        std::vector<int> y;
        y.reserve(data.size());
        for (const auto& q : data) y.push_back(static_cast<int>(q.label) == c ? 1 : 0);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = model.weights_[j][c];
        double b = model.bias_[c];
        double grad_b = 0.0;
        for (int epoch = 0; epoch < hp.epochs; ++epoch) {
            logistic_gradient(x, y, w, b, grad_w, grad_b);
            for (std::size_t j = 0; j < w.size(); ++j) w[j] -= hp.learning_rate * grad_w[j];
            b -= hp.learning_rate * grad_b;
            if (!std::isfinite(b) || !std::isfinite(logistic_loss(x, y, w, b)))
                throw std::runtime_error("loss diverged: learning rate " +
                                         format_double(hp.learning_rate) + " is too large");
        }
        for (std::size_t j = 0; j < w.size(); ++j) model.weights_[j][c] = w[j];
        model.bias_[c] = b;
    }
    return model;
}

QuestionLabel LogisticModel::predict(const std::string& text, const Preprocessor& pre) const {
    auto x = featurize(text, pre);
    std::array<double, kNumLabels> score = bias_;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0.0) continue;
        for (int c = 0; c < kNumLabels; ++c) score[c] += weights_[j][c] * x[j];
    }
    int best = 0;
    for (int c = 1; c < kNumLabels; ++c)
        if (score[c] > score[best]) best = c;
    return static_cast<QuestionLabel>(best);
}

double LogisticModel::training_accuracy(const std::vector<LabeledQuestion>& data,
                                        const Preprocessor& pre) const {
    if (data.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& q : data)
        if (predict(q.text, pre) == q.label) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

std::string LogisticModel::serialize() const {
    std::ostringstream out;
    out << "#codemap logistic-model v1\n";
    out << "bias";
    for (double b : bias_) out << ' ' << format_double(b);
    out << "\n";
    for (std::size_t j = 0; j < vocab_.size(); ++j) {
        out << vocab_[j];
        for (int c = 0; c < kNumLabels; ++c) out << '\t' << format_double(weights_[j][c]);
        out << "\n";
    }
    return out.str();
}

LogisticModel LogisticModel::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "#codemap logistic-model v1")
        throw std::runtime_error("not a logistic model file");
    LogisticModel model;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (line.rfind("bias", 0) == 0) {
            auto fields = split_ws(line);
            if (fields.size() != kNumLabels + 1) throw std::runtime_error("bad bias record");
            for (int c = 0; c < kNumLabels; ++c)
                model.bias_[c] = std::strtod(fields[c + 1].c_str(), nullptr);
        } else {
            auto fields = split(line, '\t');
            if (fields.size() != kNumLabels + 1)
                throw std::runtime_error("bad weight record: " + line);
            model.vocab_.push_back(fields[0]);
            std::array<double, kNumLabels> wv{};
            for (int c = 0; c < kNumLabels; ++c)
                wv[c] = std::strtod(fields[c + 1].c_str(), nullptr);
            model.weights_.push_back(wv);
        }
    }
    return model;
}

// ---------- corpus filter ----------

template <typename Model>
std::vector<Post> filter_howto(const std::vector<Post>& posts, const Model& model,
                               const Preprocessor& pre) {
    std::unordered_set<std::int64_t> kept;
    for (const auto& p : posts) {
        if (!p.is_question() || !p.title) continue;
        if (model.predict(*p.title, pre) == QuestionLabel::HowToDoIt) kept.insert(p.id);
    }
    std::vector<Post> out;
    for (const auto& p : posts) {
        if (p.is_question() ? kept.count(p.id) > 0
                            : (p.parent_id && kept.count(*p.parent_id) > 0))
            out.push_back(p);
    }
    return out;
}

template std::vector<Post> filter_howto<BayesModel>(const std::vector<Post>&, const BayesModel&,
                                                    const Preprocessor&);
template std::vector<Post> filter_howto<LogisticModel>(const std::vector<Post>&,
                                                       const LogisticModel&,
                                                       const Preprocessor&);

}  // namespace codemap
