#include "blowup/params.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace blowup {

namespace {

using json = nlohmann::ordered_json;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        fail(ErrorKind::BadInput, std::string(name) + " must be finite");
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::BadInput, "malformed JSON");
    if (!j.is_object()) fail(ErrorKind::BadInput, "parameter document must be a JSON object");
    return j;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            fail(ErrorKind::BadInput, "unknown parameter field: " + it.key());
    }
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        fail(ErrorKind::BadInput, std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

}  // namespace

std::string_view to_string(PhaseVariant v) {
    switch (v) {
        case PhaseVariant::AllenCahn: return "allen-cahn";
        case PhaseVariant::CahnHilliard: return "cahn-hilliard";
        case PhaseVariant::TransportOnly: return "transport-only";
    }
    return "allen-cahn";
}

PhaseVariant phase_variant_from_string(std::string_view s) {
    if (s == "allen-cahn") return PhaseVariant::AllenCahn;
    if (s == "cahn-hilliard") return PhaseVariant::CahnHilliard;
    if (s == "transport-only") return PhaseVariant::TransportOnly;
    fail(ErrorKind::BadInput, "unknown phase variant: " + std::string(s));
}

const OldroydParams& validate(const OldroydParams& p) {
    require_finite(p.f0, "f0");
    require_finite(p.alpha, "alpha");
    require_finite(p.beta, "beta");
    require_finite(p.nu, "nu");
    require_finite(p.lambda, "lambda");
    if (p.alpha == p.beta)
        fail(ErrorKind::DegenerateSeparation,
             "alpha and beta must differ (alpha - beta divides the amplitudes)");
    if (p.nu <= 0.0) fail(ErrorKind::NonPositive, "nu must be positive");
    if (p.lambda <= 0.0) fail(ErrorKind::NonPositive, "lambda must be positive");
    return p;
}

const NSParams& validate(const NSParams& p) {
    require_finite(p.t, "t");
    require_finite(p.nu, "nu");
    for (double c : {p.c1, p.c2, p.c3, p.c4, p.c5}) require_finite(c, "c");
    if (p.t <= 0.0) fail(ErrorKind::NonPositive, "t (blow-up time) must be positive");
    if (p.nu <= 0.0) fail(ErrorKind::NonPositive, "nu must be positive");
    return p;
}

const PhaseFieldParams& validate(const PhaseFieldParams& p) {
    validate(p.ns);
    require_finite(p.lambda, "lambda");
    require_finite(p.gamma, "gamma");
    require_finite(p.epsilon, "epsilon");
    if (p.lambda <= 0.0) fail(ErrorKind::NonPositive, "lambda must be positive");
    if (p.gamma < 0.0) fail(ErrorKind::NonPositive, "gamma must be nonnegative");
    if (p.epsilon <= 0.0) fail(ErrorKind::NonPositive, "epsilon must be positive");
    if (p.dimension != 2 && p.dimension != 3)
        fail(ErrorKind::BadInput, "dimension must be 2 or 3");
    if (p.variant == PhaseVariant::TransportOnly && p.gamma > 0.0)
        fail(ErrorKind::BadVariant, "transport-only requires gamma = 0");
    return p;
}

BlowUpTime blow_up_time(const OldroydParams& p) {
    // t* = (alpha - beta) / ((alpha + beta) f0), finite only when strictly
    // positive. alpha + beta = 0 and f0 = 0 are valid non-blow-up cases.
    const double sum = p.alpha + p.beta;
    if (sum == 0.0 || p.f0 == 0.0) return BlowUpTime::none();
    const double t_star = (p.alpha - p.beta) / (sum * p.f0);
    if (!(t_star > 0.0)) return BlowUpTime::none();
    return BlowUpTime::finite_at(t_star);
}

OldroydParams oldroyd_params_from_json(const std::string& text) {
    json j = parse(text);
    reject_unknown(j, {"f0", "alpha", "beta", "nu", "lambda"});
    OldroydParams p;
    p.f0 = get_number(j, "f0", p.f0);
    p.alpha = get_number(j, "alpha", p.alpha);
    p.beta = get_number(j, "beta", p.beta);
    p.nu = get_number(j, "nu", p.nu);
    p.lambda = get_number(j, "lambda", p.lambda);
    validate(p);
    return p;
}

NSParams ns_params_from_json(const std::string& text) {
    json j = parse(text);
    reject_unknown(j, {"t", "nu", "c1", "c2", "c3", "c4", "c5"});
    NSParams p;
    p.t = get_number(j, "t", p.t);
    p.nu = get_number(j, "nu", p.nu);
    p.c1 = get_number(j, "c1", p.c1);
    p.c2 = get_number(j, "c2", p.c2);
    p.c3 = get_number(j, "c3", p.c3);
    p.c4 = get_number(j, "c4", p.c4);
    p.c5 = get_number(j, "c5", p.c5);
    validate(p);
    return p;
}

PhaseFieldParams phase_field_params_from_json(const std::string& text) {
    json j = parse(text);
    reject_unknown(j, {"t", "nu", "c1", "c2", "c3", "c4", "c5", "lambda",
                       "gamma", "epsilon", "dimension", "variant"});
    PhaseFieldParams p;
    p.ns.t = get_number(j, "t", p.ns.t);
    p.ns.nu = get_number(j, "nu", p.ns.nu);
    p.ns.c1 = get_number(j, "c1", p.ns.c1);
    p.ns.c2 = get_number(j, "c2", p.ns.c2);
    p.ns.c3 = get_number(j, "c3", p.ns.c3);
    p.ns.c4 = get_number(j, "c4", p.ns.c4);
    p.ns.c5 = get_number(j, "c5", p.ns.c5);
    p.lambda = get_number(j, "lambda", p.lambda);
    p.gamma = get_number(j, "gamma", p.gamma);
    p.epsilon = get_number(j, "epsilon", p.epsilon);
    if (j.contains("dimension")) {
        if (!j.at("dimension").is_number_integer())
            fail(ErrorKind::BadInput, "dimension must be an integer");
        p.dimension = j.at("dimension").get<int>();
    }
    if (j.contains("variant")) {
        if (!j.at("variant").is_string())
            fail(ErrorKind::BadInput, "variant must be a string");
        p.variant = phase_variant_from_string(j.at("variant").get<std::string>());
    }
    validate(p);
    return p;
}

std::string to_json(const OldroydParams& p) {
    json j{{"f0", p.f0}, {"alpha", p.alpha}, {"beta", p.beta},
           {"nu", p.nu}, {"lambda", p.lambda}};
    return j.dump();
}

std::string to_json(const NSParams& p) {
    json j{{"t", p.t}, {"nu", p.nu}, {"c1", p.c1}, {"c2", p.c2},
           {"c3", p.c3}, {"c4", p.c4}, {"c5", p.c5}};
    return j.dump();
}

std::string to_json(const PhaseFieldParams& p) {
    json j{{"t", p.ns.t},       {"nu", p.ns.nu},
           {"c1", p.ns.c1},     {"c2", p.ns.c2},
           {"c3", p.ns.c3},     {"c4", p.ns.c4},
           {"c5", p.ns.c5},     {"lambda", p.lambda},
           {"gamma", p.gamma},  {"epsilon", p.epsilon},
           {"dimension", p.dimension},
           {"variant", std::string(to_string(p.variant))}};
    return j.dump();
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateSeparation: return "DegenerateSeparation";
        case ErrorKind::NonPositive: return "NonPositive";
        case ErrorKind::BadVariant: return "BadVariant";
        case ErrorKind::EmptyGrid: return "EmptyGrid";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::FootprintOutOfDomain: return "FootprintOutOfDomain";
        case ErrorKind::ZeroError: return "ZeroError";
        case ErrorKind::NoBlowUp: return "NoBlowUp";
        case ErrorKind::NonPositiveValue: return "NonPositiveValue";
        case ErrorKind::BadThreshold: return "BadThreshold";
        case ErrorKind::BadInput: return "BadInput";
    }
    return "BadInput";
}

}  // namespace blowup
