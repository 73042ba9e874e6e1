#include "vaxfront/errors.hpp"
#include "vaxfront/model.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace vaxfront {

namespace {

using nlohmann::json;

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double as_real(const json& v, const char* field)
{
    if (!v.is_number()) {
        throw ValidationError(std::string(field) + " must contain numbers");
    }
    return v.get<double>();
}

Matrix as_matrix(const json& doc, const char* field)
{
    if (!doc.contains(field) || !doc.at(field).is_array()) {
        throw ValidationError(std::string("missing array field '") + field + "'");
    }
    const json& rows = doc.at(field);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw DimensionMismatch(std::string(field) + " must be square");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = as_real(row.at(j), field);
        }
    }
    return m;
}

int as_positive_int(const json& doc, const char* field)
{
    if (!doc.contains(field) || !doc.at(field).is_number_integer()) {
        throw ValidationError(std::string("missing integer field '") + field + "'");
    }
    const auto v = doc.at(field).get<long long>();
    if (v < 1) {
        throw ValidationError(std::string(field) + " must be positive");
    }
    return static_cast<int>(v);
}

} // namespace

MetapopModel parse_model(const std::string& json_text)
{
    const json doc = parse_json(json_text);
    if (!doc.is_object()) {
        throw ValidationError("model file must be a JSON object");
    }
    const int n = as_positive_int(doc, "n");
    Matrix matrix = as_matrix(doc, "matrix");
    if (!doc.contains("weights") || !doc.at("weights").is_array()) {
        throw ValidationError("missing array field 'weights'");
    }
    const json& w = doc.at("weights");
    Vector weights(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        weights(static_cast<Eigen::Index>(i)) = as_real(w.at(i), "weights");
    }
    if (matrix.rows() != n || weights.size() != n) {
        throw DimensionMismatch("n = " + std::to_string(n) + " does not match matrix/weights sizes");
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const json& l = doc.at("labels");
        if (!l.is_array()) {
            throw ValidationError("labels must be an array of strings");
        }
        for (const auto& s : l) {
            if (!s.is_string()) {
                throw ValidationError("labels must be an array of strings");
            }
            labels.push_back(s.get<std::string>());
        }
    }
    return MetapopModel(std::move(matrix), std::move(weights), std::move(labels));
}

MetapopModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string model_to_json(const MetapopModel& model)
{
    json doc;
    const int n = model.size();
    doc["n"] = n;
    doc["weights"] = json::array();
    doc["matrix"] = json::array();
    for (int i = 0; i < n; ++i) {
        doc["weights"].push_back(model.weights()(i));
        json row = json::array();
        for (int j = 0; j < n; ++j) {
            row.push_back(model.matrix()(i, j));
        }
        doc["matrix"].push_back(std::move(row));
    }
    if (!model.labels().empty()) {
        doc["labels"] = model.labels();
    }
    return doc.dump();
}

void save_model(const MetapopModel& model, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << model_to_json(model) << '\n';
}

GridKernelSpec parse_grid(const std::string& json_text)
{
    const json doc = parse_json(json_text);
    if (!doc.is_object()) {
        throw ValidationError("grid file must be a JSON object");
    }
    GridKernelSpec spec;
    spec.grid_points = as_positive_int(doc, "grid_points");
    spec.samples = as_matrix(doc, "samples");
    if (spec.samples.rows() != spec.grid_points) {
        throw DimensionMismatch("grid_points does not match the samples size");
    }
    return spec;
}

GridKernelSpec load_grid(const std::string& path) { return parse_grid(read_file(path)); }

} // namespace vaxfront
