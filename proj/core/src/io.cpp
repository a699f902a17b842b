#include "implode/io.hpp"

#include <cmath>

#include <json.hpp>

#include "implode/errors.hpp"

namespace implode {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
    throw SchemaError(pointer + ": " + what);
}

double finite_number(const json& v, const std::string& pointer) {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(pointer, "non-finite value");
    return d;
}

Matrix parse_matrix(const json& v, int rows, int cols, const std::string& pointer) {
    if (!v.is_array()) fail(pointer, "expected an array of rows");
    if (static_cast<int>(v.size()) != rows)
        fail(pointer, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = v[r];
        const std::string rptr = pointer + "/" + std::to_string(r);
        if (!row.is_array()) fail(rptr, "expected an array of entries");
        if (static_cast<int>(row.size()) != cols)
            fail(rptr, "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const json& entry = row[c];
            const std::string eptr = rptr + "/" + std::to_string(c);
            if (!entry.is_array() || entry.size() != 2) fail(eptr, "expected an [re, im] pair");
            m(r, c) = Complex(finite_number(entry[0], eptr + "/0"),
                              finite_number(entry[1], eptr + "/1"));
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            const Complex v = m(r, c);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw SchemaError("cannot serialize non-finite matrix entry");
            row.push_back(json::array({v.real(), v.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Quiver parse_quiver(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("/: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("/", "expected an object");
    if (!doc.contains("schema_version")) fail("/schema_version", "missing");
    if (!doc["schema_version"].is_string() || doc["schema_version"] != "1")
        fail("/schema_version", "unsupported version (expected \"1\")");
    if (!doc.contains("group") || !doc["group"].is_string()) fail("/group", "missing group name");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) fail("/n", "missing integer n");
    const int n = doc["n"].get<int>();
    GroupKind kind = GroupKind::A;
    try {
        kind = kind_from_name(doc["group"].get<std::string>(), n);
    } catch (const Error& e) {
        fail("/group", e.what());
    }
    if (!doc.contains("dims") || !doc["dims"].is_array()) fail("/dims", "missing dims array");
    std::vector<int> dims;
    for (std::size_t i = 0; i < doc["dims"].size(); ++i) {
        const json& d = doc["dims"][i];
        if (!d.is_number_integer() || d.get<int>() < 1)
            fail("/dims/" + std::to_string(i), "expected a positive integer");
        dims.push_back(d.get<int>());
    }
    if (dims.empty() || dims.back() != n) fail("/dims", "dims must end at n");
    DimensionVector dv;
    try {
        dv = DimensionVector(kind, dims);
    } catch (const Error& e) {
        fail("/dims", e.what());
    }

    Quiver q;
    q.dv = dv;
    q.mode = doc.contains("beta") ? QuiverMode::hyperkahler : QuiverMode::symplectic;
    if (!doc.contains("alpha") || !doc["alpha"].is_array()) fail("/alpha", "missing alpha array");
    if (static_cast<int>(doc["alpha"].size()) != dv.edges())
        fail("/alpha", "expected " + std::to_string(dv.edges()) + " matrices");
    for (int i = 0; i < dv.edges(); ++i)
        q.alpha.push_back(
            parse_matrix(doc["alpha"][i], dv.dims[i + 1], dv.dims[i], "/alpha/" + std::to_string(i)));
    if (q.hyperkahler()) {
        if (!doc["beta"].is_array()) fail("/beta", "expected an array");
        if (static_cast<int>(doc["beta"].size()) != dv.edges())
            fail("/beta", "expected " + std::to_string(dv.edges()) + " matrices");
        for (int i = 0; i < dv.edges(); ++i)
            q.beta.push_back(
                parse_matrix(doc["beta"][i], dv.dims[i], dv.dims[i + 1], "/beta/" + std::to_string(i)));
    }
    q.validate();
    return q;
}

std::string serialize_quiver(const Quiver& q, const std::string& metadata_json) {
    q.validate();
    json doc;
    doc["schema_version"] = "1";
    doc["group"] = kind_name(q.dv.kind);
    doc["n"] = q.dv.n();
    doc["dims"] = q.dv.dims;
    json alphas = json::array();
    for (const Matrix& a : q.alpha) alphas.push_back(matrix_to_json(a));
    doc["alpha"] = std::move(alphas);
    if (q.hyperkahler()) {
        json betas = json::array();
        for (const Matrix& b : q.beta) betas.push_back(matrix_to_json(b));
        doc["beta"] = std::move(betas);
    }
    if (!metadata_json.empty()) {
        try {
            doc["metadata"] = json::parse(metadata_json);
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("metadata is not valid JSON: ") + e.what());
        }
    }
    return doc.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& report) {
    json doc;
    doc["name"] = report.name;
    doc["samples"] = report.samples;
    doc["max_error"] = report.max_error;
    doc["tolerance"] = report.tolerance;
    doc["pass"] = report.pass;
    doc["details"] = report.details;
    return doc.dump(2) + "\n";
}

}  // namespace implode
