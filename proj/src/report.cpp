#include "valkey/report.hpp"

#include <sstream>

namespace valkey {

json to_json(const ExtValue &v) { return v.str(); }
json to_json(const Poly &f) { return f.str(); }

namespace {

template <class T> json list(const std::vector<T> &v)
{
    json a = json::array();
    for (const auto &x : v)
        a.push_back(to_json(x));
    return a;
}

json opt(const std::optional<Poly> &p) { return p ? to_json(*p) : json(nullptr); }

} // namespace

json to_json(const EpsilonReport &r)
{
    json table = json::array();
    for (const auto &row : r.table)
        table.push_back({{"b", row.b},
                         {"nu_derivative", to_json(row.nu_derivative)},
                         {"ratio", row.ratio ? to_json(*row.ratio) : json(nullptr)}});
    return {{"epsilon", to_json(r.epsilon)}, {"I", r.I}, {"b", r.b}, {"nu", to_json(r.nu)}, {"table", table}};
}

json to_json(const SupportSet &s)
{
    return {{"truncation", to_json(s.value)}, {"S", s.S}, {"delta", s.delta}};
}

json to_json(const AlphaPsi &a)
{
    return {{"alpha", a.alpha ? json(*a.alpha) : json("NOT_FOUND")},
            {"psi", list(a.psi)},
            {"examined", a.examined}};
}

json to_json(const KeyStatus &k)
{
    json j = {{"status", to_string(k.verdict)}, {"epsilon", to_json(k.eps)}, {"examined", k.examined}};
    if (k.verdict == KeyStatus::Verdict::Certified)
        j["reason"] = to_string(k.reason);
    if (k.q_minus)
        j["q_minus"] = to_json(*k.q_minus);
    if (k.witness) {
        j["witness"] = to_json(*k.witness);
        j["witness_epsilon"] = to_json(*k.witness_eps);
    }
    if (!k.note.empty())
        j["note"] = k.note;
    return j;
}

json to_json(const LimitCheck &l)
{
    return {{"q_minus", to_json(l.q_minus)},
            {"K1", l.k1},
            {"K2", l.k2},
            {"K2_confidence", "bounded-scale evidence"},
            {"K3", l.k3},
            {"K4", l.k4},
            {"limit_key", l.overall},
            {"family", list(l.family)},
            {"family_values", list(l.family_values)},
            {"psi_samples", list(l.psi_samples)},
            {"k4_counterexample", opt(l.k4_counterexample)},
            {"notes", l.notes}};
}

json to_json(const CompleteSetReport &c)
{
    json keys = json::array();
    for (std::size_t i = 0; i < c.keys.size(); ++i)
        keys.push_back({{"key", to_json(c.keys[i])}, {"epsilon", to_json(c.eps[i])}, {"limit", c.limit_flags[i]}});
    json wit = json::array();
    for (const auto &w : c.witnesses)
        wit.push_back({{"f", to_json(w.f)},
                       {"key", to_json(c.keys[w.key_index])},
                       {"truncation", to_json(w.truncated)},
                       {"value", to_json(w.value)}});
    return {{"keys", keys}, {"witnesses", wit}, {"uncovered", list(c.uncovered)}, {"complete", c.complete}};
}

json to_json(const PcsCheck &c)
{
    json j = {{"ok", c.ok}, {"gamma", list(c.gamma)}};
    if (c.violation)
        j["violation"] = {(*c.violation)[0], (*c.violation)[1], (*c.violation)[2]};
    return j;
}

json to_json(const FixedValueReport &f)
{
    json j = {{"status", f.status == FixedValueReport::Status::Fixed ? "fixed" : "increasing"},
              {"values", list(f.values)},
              {"window", f.window}};
    if (f.status == FixedValueReport::Status::Fixed) {
        j["value"] = to_json(f.value);
        j["rho_f"] = f.rho_f;
    }
    return j;
}

json to_json(const DominantIndex &d)
{
    json beta = json::object();
    for (const auto &[i, b] : d.beta)
        beta[std::to_string(i)] = to_json(b);
    return {{"h", d.h},
            {"beta", beta},
            {"tail_start", d.tail_start},
            {"window", d.window},
            {"f_fixed", d.f_fixed},
            {"difference_identity", d.difference_identity},
            {"prediction_matches", d.prediction_matches},
            {"power_of_exponent_characteristic", d.power_of_exponent_characteristic},
            {"predicted", list(d.predicted)},
            {"observed", list(d.observed)}};
}

json to_json(const TypeReport &t)
{
    if (t.algebraic)
        return {{"type", "algebraic"}, {"q_min", to_json(*t.q_min)}, {"examined", t.examined}};
    return {{"type", "transcendental-up-to"}, {"degree", t.degree_bound}, {"examined", t.examined}};
}

json to_json(const AgreementReport &a)
{
    return {{"fixed", a.fixed},
            {"rho_f", a.rho_f},
            {"value", to_json(a.value)},
            {"truncations", list(a.truncations)},
            {"evaluations", list(a.evaluations)},
            {"identity_holds", a.identity_holds},
            {"dichotomy_holds", a.dichotomy_holds}};
}

json to_json(const SequenceKeysReport &s)
{
    json j = {{"type", to_json(s.type)}, {"holds", s.holds}};
    if (s.limit)
        j["limit"] = to_json(*s.limit);
    else {
        json w = json::array();
        for (const auto &x : s.witnesses)
            w.push_back({{"f", to_json(x.f)}, {"rho", x.rho}, {"value", to_json(x.value)}});
        j["witnesses"] = w;
        j["unwitnessed"] = list(s.unwitnessed);
    }
    return j;
}

json envelope(const std::string &operation, json inputs, json result, json certificates,
              const std::string &grid_spec, std::size_t budget, std::uint64_t seed)
{
    return {{"operation", operation},
            {"inputs", std::move(inputs)},
            {"result", std::move(result)},
            {"certificates", std::move(certificates)},
            {"grid-parameters", grid_spec},
            {"budget", budget},
            {"seed", seed}};
}

namespace {

void render(std::ostringstream &os, const json &j, int indent)
{
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            if (v.is_structured() && !v.empty()) {
                os << pad << k << ":\n";
                render(os, v, indent + 2);
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto &v : j) {
            if (v.is_structured()) {
                os << pad << "-\n";
                render(os, v, indent + 2);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

} // namespace

std::string render_text(const json &doc)
{
    std::ostringstream os;
    render(os, doc, 0);
    return os.str();
}

} // namespace valkey
