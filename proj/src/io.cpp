#include "dnls/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace dnls {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key)
{
    if (!j.is_object())
        throw ValidationError("parse error: expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string("parse error: missing key \"") + key + "\"");
    return *it;
}

double num(const json& j, const char* key)
{
    const auto& v = need(j, key);
    if (!v.is_number())
        throw ValidationError(std::string("parse error: key \"") + key + "\" must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x))
        throw ValidationError(std::string("parse error: key \"") + key + "\" is not finite");
    return x;
}

int sign(const json& j)
{
    const auto& v = need(j, "eps");
    if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == std::round(v.get<double>())))
        throw ValidationError("parse error: key \"eps\" must be +1 or -1");
    int e = static_cast<int>(v.get<double>());
    check_eps(e);
    return e;
}

std::vector<double> nums(const json& j, const char* key)
{
    const auto& v = need(j, key);
    if (!v.is_array())
        throw ValidationError(std::string("parse error: key \"") + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>()))
            throw ValidationError(std::string("parse error: key \"") + key
                                  + "\" has a non-numeric entry");
        out.push_back(e.get<double>());
    }
    return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw ValidationError("parse error: unknown key \"" + it.key() + "\"");
    }
}

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("parse error: ") + e.what());
    }
}

} // namespace

std::string serialize(const FieldGrid& f)
{
    json j;
    j["eps"] = f.eps;
    j["x0"] = f.x0;
    j["dx"] = f.dx;
    std::vector<double> re, im;
    for (auto& v : f.values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re"] = re;
    j["im"] = im;
    j["whole_line"] = f.whole_line;
    return j.dump();
}

std::string serialize(const ScatteringData& d)
{
    json j;
    j["eps"] = d.eps();
    j["lambda_lo"] = d.lo();
    j["lambda_hi"] = d.hi();
    j["m"] = d.m();
    std::vector<double> re, im;
    for (auto& v : d.rho_samples()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["rho_re"] = re;
    j["rho_im"] = im;
    json disc = json::array();
    for (auto& p : d.discrete()) {
        cplx c = p.c();
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NumericalError("serialize: norming constant overflows a double");
        disc.push_back({{"re", p.lambda.real()}, {"im", p.lambda.imag()},
                        {"c_re", c.real()}, {"c_im", c.imag()}});
    }
    j["discrete"] = disc;
    j["t"] = d.t_stamp();
    return j.dump();
}

FieldGrid deserialize_field(const std::string& text)
{
    json j = parse(text);
    if (!j.is_object())
        throw ValidationError("parse error: expected a JSON object");
    check_keys(j, {"eps", "x0", "dx", "re", "im", "whole_line"});
    int eps = sign(j);
    double x0 = num(j, "x0");
    double dx = num(j, "dx");
    auto re = nums(j, "re");
    auto im = nums(j, "im");
    if (re.size() != im.size())
        throw ValidationError("parse error: key \"im\" length differs from \"re\"");
    const auto& wl = need(j, "whole_line");
    if (!wl.is_boolean())
        throw ValidationError("parse error: key \"whole_line\" must be a boolean");
    std::vector<cplx> v(re.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = {re[k], im[k]};
    return FieldGrid(eps, x0, dx, std::move(v), wl.get<bool>());
}

ScatteringData deserialize_scattering(const std::string& text)
{
    json j = parse(text);
    if (!j.is_object())
        throw ValidationError("parse error: expected a JSON object");
    check_keys(j, {"eps", "lambda_lo", "lambda_hi", "m", "rho_re", "rho_im", "discrete", "t"});
    int eps = sign(j);
    double lo = num(j, "lambda_lo");
    double hi = num(j, "lambda_hi");
    const auto& mj = need(j, "m");
    if (!mj.is_number_integer() || mj.get<long long>() < 2)
        throw ValidationError("parse error: key \"m\" must be an integer >= 2");
    auto m = static_cast<std::size_t>(mj.get<long long>());
    auto re = nums(j, "rho_re");
    auto im = nums(j, "rho_im");
    if (re.size() != m)
        throw ValidationError("parse error: key \"rho_re\" length differs from \"m\"");
    if (im.size() != m)
        throw ValidationError("parse error: key \"rho_im\" length differs from \"m\"");
    std::vector<cplx> rho(m);
    for (std::size_t k = 0; k < m; ++k)
        rho[k] = {re[k], im[k]};
    const auto& dj = need(j, "discrete");
    if (!dj.is_array())
        throw ValidationError("parse error: key \"discrete\" must be an array");
    std::vector<DiscretePair> disc;
    for (auto& e : dj) {
        check_keys(e, {"re", "im", "c_re", "c_im"});
        disc.emplace_back(cplx(num(e, "re"), num(e, "im")), cplx(num(e, "c_re"), num(e, "c_im")));
    }
    double t = num(j, "t");
    return ScatteringData(eps, lo, hi, std::move(rho), std::move(disc), t);
}

void write_csv(std::ostream& os, const FieldGrid& f)
{
    os << "x,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.x(k), f.values[k].real(),
                      f.values[k].imag());
        os << buf;
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << text;
}

} // namespace dnls
