#include "regioncert/network_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "regioncert/error.hpp"

namespace regioncert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw InvalidInput("network file: field '" + field + "': " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + key, "missing");
    return *it;
}

std::size_t read_count(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path + key, "expected a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<double> read_reals(const json& obj, const std::string& key, const std::string& path,
                               std::size_t expected) {
    const json& v = require(obj, key, path);
    if (!v.is_array()) fail(path + key, "expected an array of numbers");
    if (v.size() != expected) {
        fail(path + key, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(path + key + "[" + std::to_string(i) + "]", "not a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::optional<Activation> read_activation(const json& layer, const std::string& path) {
    auto it = layer.find("activation");
    if (it == layer.end() || it->is_null()) return std::nullopt;
    const std::string field = path + "activation";
    if (it->is_string()) {
        try {
            return Activation::parse(it->get<std::string>());
        } catch (const InvalidInput& e) {
            fail(field, e.what());
        }
    }
    if (!it->is_object()) fail(field, "expected null, a name string, or {name, alpha}");
    const json& name = require(*it, "name", field + ".");
    if (!name.is_string()) fail(field + ".name", "expected a string");
    std::string text = name.get<std::string>();
    if (auto a = it->find("alpha"); a != it->end()) {
        if (!a->is_number()) fail(field + ".alpha", "expected a number");
        std::ostringstream os;
        os.precision(17);
        os << a->get<double>();
        text += ":" + os.str();
    }
    try {
        Activation act = Activation::parse(text);
        if (act.has_alpha() && it->find("alpha") == it->end()) fail(field + ".alpha", "missing");
        return act;
    } catch (const InvalidInput& e) {
        fail(field, e.what());
    }
}

}  // namespace

Network parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; translate it to line:column
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InvalidInput("network file: syntax error at line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) fail("<root>", "expected an object");
    if (auto f = doc.find("format"); f != doc.end() && (!f->is_string() || *f != "regioncert-network")) {
        fail("format", "expected \"regioncert-network\"");
    }
    if (auto v = doc.find("version"); v != doc.end() && (!v->is_number_integer() || *v != 1)) {
        fail("version", "unsupported version");
    }

    const std::size_t input_dim = read_count(doc, "input_dim", "");
    const std::size_t classes = read_count(doc, "classes", "");
    const json& layers_json = require(doc, "layers", "");
    if (!layers_json.is_array() || layers_json.empty()) fail("layers", "expected a non-empty array");

    std::vector<Layer> layers;
    for (std::size_t i = 0; i < layers_json.size(); ++i) {
        const std::string path = "layers[" + std::to_string(i) + "].";
        const json& lj = layers_json[i];
        if (!lj.is_object()) fail(path, "expected an object");
        const std::size_t rows = read_count(lj, "rows", path);
        const std::size_t cols = read_count(lj, "cols", path);
        Layer layer;
        try {
            layer.weights = Matrix(rows, cols, read_reals(lj, "weights", path, rows * cols));
        } catch (const InvalidInput& e) {
            if (std::string_view(e.what()).starts_with("network file")) throw;
            fail(path + "weights", e.what());
        }
        layer.bias = read_reals(lj, "bias", path, rows);
        layer.activation = read_activation(lj, path);
        layers.push_back(std::move(layer));
    }
    Network net(input_dim, std::move(layers));
    if (net.class_count() != classes) {
        fail("classes", "declared " + std::to_string(classes) + " but output layer has " +
                            std::to_string(net.class_count()) + " rows");
    }
    return net;
}

std::string serialize_network(const Network& net) {
    json doc;
    doc["format"] = "regioncert-network";
    doc["version"] = 1;
    doc["input_dim"] = net.input_dim();
    doc["classes"] = net.class_count();
    json layers = json::array();
    for (const Layer& l : net.layers()) {
        json lj;
        lj["rows"] = l.weights.rows();
        lj["cols"] = l.weights.cols();
        lj["weights"] = l.weights.entries();
        lj["bias"] = l.bias;
        if (l.activation) {
            json a;
            a["name"] = std::string(l.activation->name());
            if (l.activation->has_alpha()) a["alpha"] = l.activation->alpha();
            lj["activation"] = a;
        } else {
            lj["activation"] = nullptr;
        }
        layers.push_back(std::move(lj));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2) + "\n";
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open network file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write network file '" + path.string() + "'");
    out << serialize_network(net);
}

}  // namespace regioncert
