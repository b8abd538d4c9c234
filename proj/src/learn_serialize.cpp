#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tidalsim/error.hpp"
#include "tidalsim/learn.hpp"

namespace tidalsim {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

json scaler_to_json(const ScalerParams& sp) {
    return json{{"mean", sp.mean}, {"std", sp.std}};
}

ScalerParams scaler_from_json(const json& j) {
    ScalerParams sp;
    sp.mean = j.at("mean").get<std::vector<double>>();
    sp.std = j.at("std").get<std::vector<double>>();
    return sp;
}

json matrix_to_json(const DataMatrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"values", m.values}};
}

DataMatrix matrix_from_json(const json& j) {
    DataMatrix m;
    m.rows = j.at("rows").get<std::size_t>();
    m.cols = j.at("cols").get<std::size_t>();
    m.values = j.at("values").get<std::vector<double>>();
    if (m.values.size() != m.rows * m.cols) {
        throw std::invalid_argument("matrix payload size mismatch in model document");
    }
    return m;
}

template <std::size_t N>
json array_to_json(const std::array<double, N>& a) {
    return json(std::vector<double>(a.begin(), a.end()));
}

template <std::size_t N>
std::array<double, N> array_from_json(const json& j) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != N) {
        throw std::invalid_argument("fixed-size array payload has wrong length");
    }
    std::array<double, N> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return a;
}

json params_to_json(const GaussianNbModel& m) {
    return json{{"dims", m.dims},
                {"prior", array_to_json(m.prior)},
                {"mean", m.mean},
                {"var", m.var}};
}

json params_to_json(const LogisticModel& m) {
    return json{{"dims", m.dims},
                {"weights", m.weights},
                {"bias", array_to_json(m.bias)},
                {"converged", m.converged},
                {"iterations", m.iterations}};
}

json params_to_json(const PerceptronModel& m) {
    return json{{"dims", m.dims},
                {"weights", m.weights},
                {"bias", array_to_json(m.bias)},
                {"converged", m.converged},
                {"epochs_run", m.epochs_run}};
}

json params_to_json(const SvmModel& m) {
    json ovr = json::array();
    for (const BinarySvm& bin : m.ovr) {
        ovr.push_back(json{{"support_indices", bin.support_indices},
                           {"coeff", bin.coeff},
                           {"bias", bin.bias},
                           {"converged", bin.converged},
                           {"iterations", bin.iterations}});
    }
    return json{{"dims", m.dims},
                {"gamma", m.gamma},
                {"c", m.c},
                {"support", matrix_to_json(m.support)},
                {"ovr", ovr}};
}

json params_to_json(const ForestModel& m) {
    json trees = json::array();
    for (const Tree& tree : m.trees) {
        json nodes = json::array();
        for (const TreeNode& n : tree.nodes) {
            nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right,
                                         n.proportions[0], n.proportions[1],
                                         n.proportions[2]}));
        }
        trees.push_back(std::move(nodes));
    }
    return json{{"dims", m.dims}, {"trees", std::move(trees)}};
}

ModelVariant params_from_json(ClassifierKind kind, const json& j) {
    switch (kind) {
        case ClassifierKind::GaussianNb: {
            GaussianNbModel m;
            m.dims = j.at("dims").get<std::size_t>();
            m.prior = array_from_json<kNumClasses>(j.at("prior"));
            m.mean = j.at("mean").get<std::vector<double>>();
            m.var = j.at("var").get<std::vector<double>>();
            return m;
        }
        case ClassifierKind::Logistic: {
            LogisticModel m;
            m.dims = j.at("dims").get<std::size_t>();
            m.weights = j.at("weights").get<std::vector<double>>();
            m.bias = array_from_json<kNumClasses>(j.at("bias"));
            m.converged = j.at("converged").get<bool>();
            m.iterations = j.at("iterations").get<int>();
            return m;
        }
        case ClassifierKind::Perceptron: {
            PerceptronModel m;
            m.dims = j.at("dims").get<std::size_t>();
            m.weights = j.at("weights").get<std::vector<double>>();
            m.bias = array_from_json<kNumClasses>(j.at("bias"));
            m.converged = j.at("converged").get<bool>();
            m.epochs_run = j.at("epochs_run").get<int>();
            return m;
        }
        case ClassifierKind::SvmRbf: {
            SvmModel m;
            m.dims = j.at("dims").get<std::size_t>();
            m.gamma = j.at("gamma").get<double>();
            m.c = j.at("c").get<double>();
            m.support = matrix_from_json(j.at("support"));
            const json& ovr = j.at("ovr");
            if (!ovr.is_array() || ovr.size() != kNumClasses) {
                throw std::invalid_argument("SVM document needs one binary machine per class");
            }
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                BinarySvm& bin = m.ovr[c];
                bin.support_indices =
                    ovr[c].at("support_indices").get<std::vector<std::size_t>>();
                bin.coeff = ovr[c].at("coeff").get<std::vector<double>>();
                bin.bias = ovr[c].at("bias").get<double>();
                bin.converged = ovr[c].at("converged").get<bool>();
                bin.iterations = ovr[c].at("iterations").get<std::size_t>();
            }
            return m;
        }
        case ClassifierKind::RandomForest: {
            ForestModel m;
            m.dims = j.at("dims").get<std::size_t>();
            for (const json& jt : j.at("trees")) {
                Tree tree;
                for (const json& jn : jt) {
                    if (!jn.is_array() || jn.size() != 7) {
                        throw std::invalid_argument("malformed tree node in model document");
                    }
                    TreeNode n;
                    n.feature = jn[0].get<int>();
                    n.threshold = jn[1].get<double>();
                    n.left = jn[2].get<int>();
                    n.right = jn[3].get<int>();
                    n.proportions = {jn[4].get<double>(), jn[5].get<double>(),
                                     jn[6].get<double>()};
                    tree.nodes.push_back(n);
                }
                m.trees.push_back(std::move(tree));
            }
            return m;
        }
    }
    throw std::invalid_argument("unknown classifier kind in model document");
}

}  // namespace

std::string model_to_json(const TrainedModel& m) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["kind"] = classifier_name(m.kind());
    doc["scaler"] = scaler_to_json(m.scaler);
    doc["params"] = std::visit([](const auto& payload) { return params_to_json(payload); },
                               m.model);
    return doc.dump();
}

TrainedModel model_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != kModelFormatVersion) {
        throw std::invalid_argument("unsupported model format version");
    }
    TrainedModel m;
    m.scaler = scaler_from_json(doc.at("scaler"));
    const ClassifierKind kind = parse_classifier(doc.at("kind").get<std::string>());
    m.model = params_from_json(kind, doc.at("params"));
    return m;
}

void save_model(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << model_to_json(m) << '\n';
    if (!out) throw IoError("failed while writing '" + path + "'");
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed while reading '" + path + "'");
    return model_from_json(text);
}

}  // namespace tidalsim
