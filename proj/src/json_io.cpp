#include "virmod/json_io.hpp"

namespace virmod {

json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    throw std::invalid_argument("rational must be a \"p/q\" string: " + j.dump());
}

json omega_to_json(const OmegaParams& p) {
    return json{{"lambda", scalar_to_json(p.lambda)}, {"alpha", scalar_to_json(p.alpha)}};
}

OmegaParams omega_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("alpha"))
        throw std::invalid_argument("factor needs lambda and alpha: " + j.dump());
    return OmegaParams{scalar_from_json(j.at("lambda")), scalar_from_json(j.at("alpha"))};
}

json vdescriptor_to_json(const VDescriptor& v) {
    if (const auto* od = std::get_if<OneDim>(&v))
        return json{{"kind", "one_dim"}, {"beta", scalar_to_json(od->beta)}};
    if (const auto* sm = std::get_if<ShiftModule>(&v))
        return json{{"kind", "shift"}, {"c", scalar_to_json(sm->c)}, {"window", sm->window}};
    const auto& mm = std::get<MatrixModule>(v);
    json actions = json::array();
    for (const auto& a : mm.actions) {
        json rows = json::array();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            json row = json::array();
            for (std::size_t jcol = 0; jcol < a.cols(); ++jcol)
                row.push_back(scalar_to_json(a(i, jcol)));
            rows.push_back(std::move(row));
        }
        actions.push_back(std::move(rows));
    }
    return json{{"kind", "matrix"}, {"r", mm.r}, {"window", mm.window}, {"actions", actions}};
}

VDescriptor vdescriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("v descriptor needs a kind: " + j.dump());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "one_dim") return OneDim{scalar_from_json(j.at("beta"))};
    if (kind == "shift") {
        ShiftModule sm;
        sm.c = scalar_from_json(j.at("c"));
        sm.window = j.value("window", 8);
        if (sm.window < 2) throw std::invalid_argument("shift window must be >= 2");
        return sm;
    }
    if (kind == "matrix") {
        MatrixModule mm;
        mm.r = j.at("r").get<int>();
        mm.window = j.at("window").get<int>();
        if (mm.r < 1 || mm.window < 1)
            throw std::invalid_argument("matrix module needs r >= 1 and window >= 1");
        const json& actions = j.at("actions");
        if (!actions.is_array() || static_cast<int>(actions.size()) != mm.r + 1)
            throw std::invalid_argument("matrix module needs r+1 action matrices");
        for (const json& a : actions) {
            ExactMatrix m(static_cast<std::size_t>(mm.window), static_cast<std::size_t>(mm.window));
            if (static_cast<int>(a.size()) != mm.window)
                throw std::invalid_argument("action matrix must be window x window");
            for (std::size_t row = 0; row < m.rows(); ++row) {
                if (static_cast<int>(a.at(row).size()) != mm.window)
                    throw std::invalid_argument("action matrix must be window x window");
                for (std::size_t col = 0; col < m.cols(); ++col)
                    m(row, col) = scalar_from_json(a.at(row).at(col));
            }
            mm.actions.push_back(std::move(m));
        }
        return mm;
    }
    throw std::invalid_argument("unknown v descriptor kind: " + kind);
}

json descriptor_to_json(const TensorDescriptor& d) {
    json factors = json::array();
    for (const auto& f : d.factors) factors.push_back(omega_to_json(f));
    return json{{"v", vdescriptor_to_json(d.v)},
                {"factor0", omega_to_json(d.factor0)},
                {"factors", factors}};
}

TensorDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("v") || !j.contains("factor0"))
        throw std::invalid_argument("descriptor needs v and factor0: " + j.dump());
    TensorDescriptor d;
    d.v = vdescriptor_from_json(j.at("v"));
    d.factor0 = omega_from_json(j.at("factor0"));
    if (j.contains("factors"))
        for (const json& f : j.at("factors")) d.factors.push_back(omega_from_json(f));
    d.validate_params();
    return d;
}

json element_to_json(const TensorElement& e) {
    json terms = json::array();
    for (const auto& [key, c] : e.terms())
        terms.push_back(json{{"v", key.second}, {"mono", key.first}, {"coeff", scalar_to_json(c)}});
    return json{{"nvars", e.nvars()}, {"terms", terms}};
}

TensorElement element_from_json(const json& j) {
    TensorElement e(j.at("nvars").get<std::size_t>());
    for (const json& t : j.at("terms")) {
        Monomial m = t.at("mono").get<Monomial>();
        for (int x : m)
            if (x < 0) throw std::invalid_argument("negative exponent in element");
        e.add_term(m, t.at("v").get<int>(), scalar_from_json(t.at("coeff")));
    }
    return e;
}

json structure_to_json(const ExpPolyStructure& s) {
    json mus = json::array();
    for (const auto& mu : s.mus) mus.push_back(scalar_to_json(mu));
    return json{{"mus", mus}, {"degree_bound", s.degree_bound}};
}

ExpPolyStructure structure_from_json(const json& j) {
    ExpPolyStructure s;
    for (const json& mu : j.at("mus")) s.mus.push_back(scalar_from_json(mu));
    s.degree_bound = j.at("degree_bound").get<int>();
    s.validate();
    return s;
}

json samples_to_json(const SampleSet& s) {
    json values = json::array();
    for (const auto& v : s.values) {
        json row = json::array();
        for (const auto& x : v) row.push_back(scalar_to_json(x));
        values.push_back(std::move(row));
    }
    return json{{"window", s.window}, {"values", values}};
}

SampleSet samples_from_json(const json& j) {
    SampleSet s;
    s.window = j.at("window").get<std::vector<long>>();
    for (const json& row : j.at("values")) {
        std::vector<Scalar> v;
        for (const json& x : row) v.push_back(scalar_from_json(x));
        s.values.push_back(std::move(v));
    }
    return s;
}

std::string json_hash(const json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

}  // namespace

std::string validate_against_schema(const json& value, const json& schema) {
    if (schema.contains("type") && !type_matches(value, schema.at("type").get<std::string>()))
        return "expected type " + schema.at("type").get<std::string>() + " at " + value.dump().substr(0, 60);
    if (schema.contains("enum")) {
        bool ok = false;
        for (const json& e : schema.at("enum")) ok = ok || (e == value);
        if (!ok) return "value " + value.dump() + " not in enum";
    }
    if (schema.contains("required"))
        for (const json& k : schema.at("required"))
            if (!value.contains(k.get<std::string>()))
                return "missing required key " + k.get<std::string>();
    if (schema.contains("properties") && value.is_object())
        for (const auto& [k, sub] : schema.at("properties").items())
            if (value.contains(k)) {
                std::string err = validate_against_schema(value.at(k), sub);
                if (!err.empty()) return k + ": " + err;
            }
    if (schema.contains("items") && value.is_array())
        for (const json& item : value) {
            std::string err = validate_against_schema(item, schema.at("items"));
            if (!err.empty()) return "item: " + err;
        }
    return "";
}

}  // namespace virmod
