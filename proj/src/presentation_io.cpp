#include "nilzeta/presentation_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilzeta/errors.hpp"

namespace nilzeta {

namespace {

using nlohmann::json;

struct Ctx {
    std::string source;

    [[noreturn]] void fail(const std::string& where, const std::string& msg) const {
        throw ParseError(source + ": at " + (where.empty() ? "/" : where) + ": " + msg);
    }

    const json& field(const json& obj, const std::string& where, const char* key) const {
        auto it = obj.find(key);
        if (it == obj.end())
            fail(where, std::string("missing field \"") + key + "\"");
        return *it;
    }

    std::int64_t integer(const json& j, const std::string& where) const {
        if (!j.is_number_integer())
            fail(where, "expected an integer");
        return j.get<std::int64_t>();
    }

    const json& array(const json& j, const std::string& where) const {
        if (!j.is_array())
            fail(where, "expected an array");
        return j;
    }
};

std::string idx(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

/// rows x cols array of length-nvars integer vectors.
LinearFormMatrix read_forms(const Ctx& c, const json& j, const std::string& where, int nvars) {
    const auto& rows = c.array(j, where);
    if (rows.empty())
        c.fail(where, "empty matrix");
    int nr = static_cast<int>(rows.size());
    int nc = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = c.array(rows[i], idx(where, i));
        if (nc < 0)
            nc = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != nc)
            c.fail(idx(where, i), "rows have different lengths");
    }
    if (nc <= 0)
        c.fail(where, "empty matrix");
    if (nvars < 0)
        nvars = static_cast<int>(c.array(rows[0][0], idx(idx(where, 0), 0)).size());
    LinearFormMatrix M(nr, nc, nvars);
    for (int i = 0; i < nr; ++i) {
        for (int k = 0; k < nc; ++k) {
            std::string w = idx(idx(where, static_cast<std::size_t>(i)), static_cast<std::size_t>(k));
            const auto& v = c.array(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], w);
            if (static_cast<int>(v.size()) != nvars)
                c.fail(w, "expected a vector of length " + std::to_string(nvars));
            for (int t = 0; t < nvars; ++t)
                M.set(i, k, t, c.integer(v[static_cast<std::size_t>(t)], idx(w, static_cast<std::size_t>(t))));
        }
    }
    return M;
}

Presentation read_blocks(const Ctx& c, const json& blocks, int dprime) {
    if (dprime != 2)
        c.fail("/dprime", "block presentations have d' = 2");
    c.array(blocks, "/blocks");
    if (blocks.empty())
        c.fail("/blocks", "no blocks given");
    std::vector<Presentation> parts;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::string w = idx("/blocks", i);
        const auto& b = blocks[i];
        if (!b.is_object())
            c.fail(w, "expected an object");
        const auto& type = c.field(b, w, "type");
        if (type == "odd") {
            auto r = c.integer(c.field(b, w, "r"), w + "/r");
            if (r < 1)
                c.fail(w + "/r", "r must be positive");
            parts.push_back(block_odd(static_cast<int>(r)));
        } else if (type == "even") {
            const auto& co = c.array(c.field(b, w, "coeffs"), w + "/coeffs");
            if (co.empty())
                c.fail(w + "/coeffs", "need at least one coefficient");
            std::vector<std::int64_t> a;
            for (std::size_t k = 0; k < co.size(); ++k)
                a.push_back(c.integer(co[k], idx(w + "/coeffs", k)));
            try {
                parts.push_back(block_even(a));
            } catch (const BadCoefficients& e) {
                c.fail(w + "/coeffs", e.what());
            }
        } else {
            c.fail(w + "/type", "expected \"odd\" or \"even\"");
        }
    }
    return parts.size() == 1 ? parts[0] : direct_sum(parts);
}

GeoRatFun read_formula(const Ctx& c, const json& f) {
    if (!f.is_object())
        c.fail("/formula", "expected an object");
    BivarPoly num;
    const auto& nt = c.array(c.field(f, "/formula", "numer"), "/formula/numer");
    for (std::size_t i = 0; i < nt.size(); ++i) {
        std::string w = idx("/formula/numer", i);
        const auto& t = c.array(nt[i], w);
        if (t.size() != 3)
            c.fail(w, "expected [coefficient, x exponent, y exponent]");
        num.add_term({static_cast<int>(c.integer(t[1], w + "/1")), static_cast<int>(c.integer(t[2], w + "/2"))},
                     Integer(std::to_string(c.integer(t[0], w + "/0"))));
    }
    if (num.is_zero())
        c.fail("/formula/numer", "numerator is zero");
    std::vector<Exponent> den;
    if (f.contains("denom")) {
        const auto& dt = c.array(f["denom"], "/formula/denom");
        for (std::size_t i = 0; i < dt.size(); ++i) {
            std::string w = idx("/formula/denom", i);
            const auto& t = c.array(dt[i], w);
            if (t.size() != 2)
                c.fail(w, "expected [x exponent, y exponent]");
            Exponent e{static_cast<int>(c.integer(t[0], w + "/0")), static_cast<int>(c.integer(t[1], w + "/1"))};
            if (e == Exponent{})
                c.fail(w, "factor (1 - 1) is zero");
            den.push_back(e);
        }
    }
    Exponent lo = num.min_exponent();
    return GeoRatFun(Rational(1), lo, num.shifted(-lo), den);
}

} // namespace

InputFile parse_input(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        // drop the library prefix "[json.exception.parse_error.101] parse error at ...: "
        if (auto k = msg.find(": "); k != std::string::npos)
            msg = msg.substr(k + 2);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
    Ctx c{source};
    if (!j.is_object())
        c.fail("", "expected an object");

    InputFile in;
    in.source = source;
    try {
        if (j.contains("R")) {
            in.P = from_R(read_forms(c, j["R"], "/R", 3));
        } else if (j.contains("blocks")) {
            int dp = j.contains("dprime") ? static_cast<int>(c.integer(j["dprime"], "/dprime")) : 2;
            in.P = read_blocks(c, j["blocks"], dp);
        } else if (j.contains("matrix")) {
            int dp = static_cast<int>(c.integer(c.field(j, "", "dprime"), "/dprime"));
            if (dp < 0)
                c.fail("/dprime", "must be nonnegative");
            auto M = read_forms(c, j["matrix"], "/matrix", dp);
            if (M.rows() != M.cols())
                c.fail("/matrix", "matrix must be square");
            if (!M.is_antisymmetric())
                c.fail("/matrix", "matrix must be antisymmetric");
            in.P = from_matrix(M);
        } else {
            c.fail("", "expected one of the fields \"blocks\", \"matrix\" or \"R\"");
        }
        if (j.contains("formula"))
            in.formula = read_formula(c, j["formula"]);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source + ": " + e.what());
    }
    return in;
}

InputFile load_input(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_input(ss.str(), path);
}

} // namespace nilzeta
