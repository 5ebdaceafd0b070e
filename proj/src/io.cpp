#include "cqsc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cqsc {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ValidationError(std::string(what) + ": unknown key '" + it.key() + "'");
    }
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << path << ": " << e.what();
        throw ValidationError(msg.str());
    }
}

std::vector<std::vector<double>> real_grid(const json& j, int dim, const char* key) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ValidationError(std::string("matrix literal: '") + key + "' must be a " +
                              std::to_string(dim) + "-row array");
    std::vector<std::vector<double>> out;
    out.reserve(dim);
    for (const json& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ValidationError(std::string("matrix literal: ragged row in '") + key + "'");
        std::vector<double> r;
        r.reserve(dim);
        for (const json& v : row) {
            if (!v.is_number())
                throw ValidationError(std::string("matrix literal: non-numeric entry in '") + key +
                                      "'");
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

HermitianMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("matrix literal: expected an object");
    reject_unknown_keys(j, {"dim", "re", "im"}, "matrix literal");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ValidationError("matrix literal: missing integer 'dim'");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw ValidationError("matrix literal: dim must be >= 1");
    if (!j.contains("re")) throw ValidationError("matrix literal: missing 're'");
    const auto re = real_grid(j["re"], dim, "re");
    std::vector<std::vector<double>> im;
    if (j.contains("im"))
        im = real_grid(j["im"], dim, "im");
    else
        im.assign(dim, std::vector<double>(dim, 0.0));

    std::vector<Complex> entries(static_cast<std::size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            entries[static_cast<std::size_t>(r) * dim + c] = Complex(re[r][c], im[r][c]);

    // validate Hermitian before the constructor symmetrizes
    double asym = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const Complex d = entries[static_cast<std::size_t>(r) * dim + c] -
                              std::conj(entries[static_cast<std::size_t>(c) * dim + r]);
            asym = std::max(asym, std::abs(d));
        }
    if (asym > kHermTol) {
        std::ostringstream msg;
        msg << "matrix literal: not Hermitian (max asymmetry " << asym << " > " << kHermTol << ")";
        throw ValidationError(msg.str());
    }
    return HermitianMatrix::from_entries(dim, entries);
}

json matrix_to_json(const HermitianMatrix& m) {
    const int d = m.dim();
    json re = json::array(), im = json::array();
    for (int r = 0; r < d; ++r) {
        json rr = json::array(), ri = json::array();
        for (int c = 0; c < d; ++c) {
            rr.push_back(m.at(r, c).real());
            ri.push_back(m.at(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ChannelFile load_channel(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_object()) throw ValidationError(path + ": channel file must be a JSON object");
    reject_unknown_keys(j, {"dim", "states", "labels"}, "channel file");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ValidationError(path + ": missing integer 'dim'");
    if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
        throw ValidationError(path + ": 'states' must be a non-empty array");
    const int dim = j["dim"].get<int>();

    std::vector<DensityOperator> states;
    states.reserve(j["states"].size());
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        HermitianMatrix m = [&] {
            try {
                return matrix_from_json(j["states"][i]);
            } catch (const ValidationError& e) {
                throw ValidationError(path + ": state " + std::to_string(i + 1) + ": " + e.what());
            }
        }();
        if (m.dim() != dim)
            throw ValidationError(path + ": state " + std::to_string(i + 1) +
                                  " has dim != channel dim");
        try {
            states.emplace_back(std::move(m));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ": state " + std::to_string(i + 1) + ": " + e.what());
        }
    }

    ChannelFile out{CqChannel(std::move(states)), {}};
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || j["labels"].size() != j["states"].size())
            throw ValidationError(path + ": 'labels' must match 'states' in length");
        for (const json& v : j["labels"]) out.labels.push_back(v.get<std::string>());
    }
    return out;
}

Codebook load_codebook(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_object()) throw ValidationError(path + ": codebook file must be a JSON object");
    reject_unknown_keys(j, {"n", "words"}, "codebook file");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ValidationError(path + ": missing integer 'n'");
    if (!j.contains("words") || !j["words"].is_array() || j["words"].empty())
        throw ValidationError(path + ": 'words' must be a non-empty array");
    std::vector<std::vector<int>> words;
    words.reserve(j["words"].size());
    for (const json& w : j["words"]) {
        if (!w.is_array()) throw ValidationError(path + ": each codeword must be an array");
        std::vector<int> word;
        word.reserve(w.size());
        for (const json& v : w) {
            if (!v.is_number_integer())
                throw ValidationError(path + ": codeword letters must be integers");
            word.push_back(v.get<int>());
        }
        words.push_back(std::move(word));
    }
    try {
        return Codebook(j["n"].get<int>(), std::move(words));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Povm load_povm(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_array() || j.empty())
        throw ValidationError(path + ": POVM file must be a non-empty JSON array");
    std::vector<HermitianMatrix> elements;
    elements.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            elements.push_back(matrix_from_json(j[i]));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ": element " + std::to_string(i) + ": " + e.what());
        }
    }
    try {
        return Povm(std::move(elements));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

json verdict_to_json(const VerdictReport& rep) {
    return json{{"suite", rep.suite},
                {"trials", rep.trials},
                {"worst_violation", rep.worst_violation},
                {"tolerance", rep.tolerance},
                {"passed", rep.passed},
                {"failing_seeds", rep.failing_seeds}};
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write file: " + tmp.string());
        out << content;
        if (!out.flush()) throw ValidationError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ValidationError("cannot rename " + tmp.string() + " to " + path + ": " +
                              ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace cqsc
