#include "ltp/json_io.hpp"

#include <sstream>

namespace ltp::io {

namespace {

long vp_rational(const mpq_class& q, long p) {
    if (q == 0) return kExactPrec;
    mpz_class t;
    const mpz_class pp(p);
    const long a = static_cast<long>(mpz_remove(t.get_mpz_t(), q.get_num_mpz_t(), pp.get_mpz_t()));
    const long b = static_cast<long>(mpz_remove(t.get_mpz_t(), q.get_den_mpz_t(), pp.get_mpz_t()));
    return a - b;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

long get_long(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("missing key '") + key + "'");
    const Json& v = j.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) return std::stol(v.get<std::string>());
    throw InvalidArgument(std::string("key '") + key + "' must be an integer");
}

std::optional<long> get_order(const Json& j) {
    if (!j.contains("order") || j.at("order").is_null()) return std::nullopt;
    return get_long(j, "order");
}

}  // namespace

std::string val_string(const Valuation& v) { return v.to_string(); }

Json field_to_json(const Field& F, long out_prec) {
    Json j;
    j["p"] = F.p();
    j["flavor"] = flavor_name(F.flavor());
    j["h"] = F.h();
    j["e"] = F.e();
    Json poly = Json::array();
    for (const auto& c : F.poly()) poly.push_back(c.get_str());
    j["poly"] = poly;
    j["prec"] = out_prec;
    return j;
}

FieldPtr field_from_json(const Json& j, int prec) {
    const long p = get_long(j, "p");
    const std::string flavor = j.value("flavor", std::string("qp"));
    if (flavor == "qp") return Field::qp(p, prec);
    if (flavor == "unramified") return Field::unramified(p, static_cast<int>(get_long(j, "h")), prec);
    if (flavor == "eisenstein") {
        IntPoly poly;
        for (const auto& c : j.at("poly")) poly.push_back(mpz_class(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long>())));
        return Field::eisenstein(p, poly, prec);
    }
    throw InvalidArgument("unknown flavor '" + flavor + "'");
}

void check_field(const Json& j, const Field& F) {
    if (!j.contains("field")) return;
    const FieldPtr G = field_from_json(j.at("field"), F.prec());
    if (!G->same_as(F)) throw SpecMismatch("input was written over " + G->describe() + ", not " + F.describe());
}

std::string compact(const FElement& c) { return c.to_string(); }

FElement from_compact(const FieldPtr& F, const std::string& s, long abs_prec) {
    std::vector<mpq_class> b;
    for (const auto& part : split(s, ';')) b.push_back(parse_rational(part));
    if (static_cast<int>(b.size()) > F->degree()) throw InvalidArgument("too many basis coefficients in '" + s + "'");
    long v = kExactPrec;
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        const long vi = F->e() * vp_rational(b[i], F->p()) + (F->flavor() == Flavor::Eisenstein ? static_cast<long>(i) : 0);
        v = std::min(v, vi);
    }
    if (v == kExactPrec) return abs_prec >= kExactPrec ? FElement::zero(F) : FElement::inexact_zero(F, abs_prec);
    if (abs_prec >= kExactPrec) return FElement::from_basis(F, b);
    if (abs_prec <= v) return FElement::inexact_zero(F, abs_prec);
    return FElement::from_basis(F, b, abs_prec - v + 1).truncated(abs_prec);
}

Json elt_to_json(const FElement& c0, long out_prec) {
    const FElement c = c0.truncated(out_prec);
    Json j;
    if (c.is_exact_zero()) {
        j["zero"] = "exact";
    } else if (c.is_zero()) {
        j["zero"] = "inexact";
        j["abs_prec"] = c.abs_prec();
    } else {
        j["value"] = compact(c);
        j["abs_prec"] = c.abs_prec();
        j["val_p"] = val_string(c.val_p());
    }
    return j;
}

FElement elt_from_json(const FieldPtr& F, const Json& j) {
    if (j.is_object() && j.contains("digits")) return elt_from_record(F, j);
    if (j.is_string()) return from_compact(F, j.get<std::string>());
    if (j.is_number_integer()) return FElement::from_int(F, j.get<long>());
    if (j.contains("zero")) {
        if (j.at("zero") == "exact") return FElement::zero(F);
        return FElement::inexact_zero(F, get_long(j, "abs_prec"));
    }
    const long A = j.contains("abs_prec") ? get_long(j, "abs_prec") : kExactPrec;
    return from_compact(F, j.at("value").get<std::string>(), A);
}

Json elt_record(const FElement& c) {
    Json j;
    j["p"] = c.field()->p();
    j["flavor"] = flavor_name(c.field()->flavor());
    if (c.is_exact_zero()) {
        j["zero"] = "exact";
        return j;
    }
    if (c.is_zero()) {
        j["zero"] = "inexact";
        j["abs_prec"] = c.abs_prec();
        return j;
    }
    Json digits = Json::array();
    for (const auto& row : c.digits()) {
        std::string s;
        for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + std::to_string(row[i]);
        digits.push_back(s);
    }
    j["digits"] = digits;
    j["prec"] = c.rel_prec();
    j["shift"] = c.shift();
    return j;
}

FElement elt_from_record(const FieldPtr& F, const Json& j) {
    if (j.contains("p") && get_long(j, "p") != F->p())
        throw SpecMismatch("digit record over p = " + std::to_string(get_long(j, "p")));
    if (j.contains("zero")) {
        if (j.at("zero") == "exact") return FElement::zero(F);
        return FElement::inexact_zero(F, get_long(j, "abs_prec"));
    }
    std::vector<std::vector<long>> digits;
    for (const auto& row : j.at("digits")) {
        std::vector<long> d;
        for (const auto& part : split(row.get<std::string>(), ','))
            if (!part.empty()) d.push_back(std::stol(part));
        digits.push_back(d);
    }
    return FElement::from_digits(F, digits, get_long(j, "prec"), get_long(j, "shift"));
}

Json series_to_json(const TruncSeries& s, long out_prec, const std::string& variable) {
    Json j;
    j["variable"] = variable;
    j["field"] = field_to_json(*s.field(), out_prec);
    j["kmin"] = s.coeffs().empty() ? 0 : s.kmin();
    j["order"] = s.order() ? Json(*s.order()) : Json(nullptr);
    Json coeffs = Json::object(), prec = Json::object();
    for (const auto& [k, c0] : s.coeffs()) {
        const FElement c = c0.truncated(out_prec);
        if (c.is_exact_zero()) continue;
        coeffs[std::to_string(k)] = compact(c);
        prec[std::to_string(k)] = c.abs_prec();
    }
    j["coeffs"] = coeffs;
    j["abs_prec"] = prec;
    return j;
}

TruncSeries series_from_json(const FieldPtr& F, const Json& j) {
    check_field(j, *F);
    TruncSeries s(F, get_order(j));
    if (!j.contains("coeffs")) throw InvalidArgument("series needs a 'coeffs' object");
    for (const auto& [key, val] : j.at("coeffs").items()) {
        const long k = std::stol(key);
        long A = kExactPrec;
        if (j.contains("abs_prec") && j.at("abs_prec").contains(key)) A = j.at("abs_prec").at(key).get<long>();
        FElement c = val.is_string() ? from_compact(F, val.get<std::string>(), A) : elt_from_json(F, val);
        s.set(k, c);
    }
    return s;
}

Json multi_to_json(const MultiSeries& x, long out_prec) {
    Json j;
    j["field"] = field_to_json(*x.field(), out_prec);
    j["nvars"] = x.nvars();
    j["order"] = x.order() ? Json(*x.order()) : Json(nullptr);
    Json terms = Json::array();
    for (const auto& [e, c] : x.terms()) {
        if (c.truncated(out_prec).is_exact_zero()) continue;
        Json t;
        t["exp"] = e;
        t["coeff"] = elt_to_json(c, out_prec);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

MultiSeries multi_from_json(const FieldPtr& F, int nvars, const Json& j) {
    check_field(j, *F);
    if (j.contains("nvars") && get_long(j, "nvars") != nvars)
        throw SpecMismatch("element has " + std::to_string(get_long(j, "nvars")) + " variables, expected " +
                           std::to_string(nvars));
    MultiSeries x(F, nvars, get_order(j));
    if (!j.contains("terms")) throw InvalidArgument("element needs a 'terms' array");
    for (const auto& t : j.at("terms")) {
        Exponent e = t.at("exp").get<Exponent>();
        if (static_cast<int>(e.size()) != nvars) throw InvalidArgument("exponent has the wrong length");
        x.set(e, elt_from_json(F, t.at("coeff")));
    }
    return x;
}

Json matrix_to_json(const Matrix& m, long out_prec) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.dim(); ++k) {
            Json e = multi_to_json(m(i, k), out_prec);
            e.erase("field");
            row.push_back(e);
        }
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const FieldPtr& F, int nvars, const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidArgument("matrix must be a nonempty array of rows");
    const int d = static_cast<int>(j.size());
    Matrix m(F, nvars, d);
    for (int i = 0; i < d; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != d) throw InvalidArgument("matrix must be square");
        for (int k = 0; k < d; ++k) m(i, k) = multi_from_json(F, nvars, j[i][k]);
    }
    return m;
}

Json connection_to_json(const Connection& c, long out_prec) {
    Json j;
    j["field"] = field_to_json(*c.field, out_prec);
    j["d"] = c.d;
    j["h"] = c.h();
    j["deg"] = c.order;
    Json mats = Json::object();
    for (int k = 1; k < c.h(); ++k) mats[std::to_string(k)] = matrix_to_json(c.D(k), out_prec);
    j["matrices"] = mats;
    return j;
}

Connection connection_from_json(const FieldPtr& F, const Json& j) {
    check_field(j, *F);
    const int h = j.contains("h") ? static_cast<int>(get_long(j, "h")) : F->h();
    if (h != F->h()) throw SpecMismatch("connection has h = " + std::to_string(h) + " over a field of degree " +
                                        std::to_string(F->h()));
    const int d = static_cast<int>(get_long(j, "d"));
    const long deg = get_long(j, "deg");
    std::vector<Matrix> mats;
    for (int k = 1; k < h; ++k) {
        const std::string key = std::to_string(k);
        if (!j.contains("matrices") || !j.at("matrices").contains(key)) {
            mats.emplace_back(F, h, d, deg);
            continue;
        }
        Matrix m = matrix_from_json(F, h, j.at("matrices").at(key));
        if (m.dim() != d) throw InvalidArgument("matrix " + key + " is not " + std::to_string(d) + " x " + std::to_string(d));
        mats.push_back(m);
    }
    return make_connection(F, d, deg, std::move(mats));
}

}  // namespace ltp::io
