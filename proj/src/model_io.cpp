#include "imago/model_io.hpp"

#include <fstream>
#include <iostream>

#include "imago/errors.hpp"

namespace imago {

namespace {

const Json& expect(const Json& doc, const char* field) {
    if (!doc.is_object() || !doc.contains(field)) {
        throw ParseError(std::string("missing field '") + field + "'");
    }
    return doc.at(field);
}

std::string expect_string(const Json& doc, const char* field) {
    const Json& value = expect(doc, field);
    if (!value.is_string()) {
        throw ParseError(std::string("field '") + field + "' must be a string");
    }
    return value.get<std::string>();
}

} // namespace

std::string event_key(const Algebra& algebra, Event e) {
    std::string key;
    bool first = true;
    for (unsigned i = 0; i < algebra.atom_count(); ++i) {
        if (contains(e, i)) {
            if (!first) {
                key += ",";
            }
            key += algebra.atom_name(i);
            first = false;
        }
    }
    return key;
}

Event event_from_names(const Algebra& algebra, const Json& names) {
    if (!names.is_array()) {
        throw ParseError("event must be an array of atom names");
    }
    Event e{0};
    for (const Json& name : names) {
        if (!name.is_string()) {
            throw ParseError("event atom names must be strings");
        }
        e.bits |= std::uint32_t{1} << algebra.atom_index(name.get<std::string>());
    }
    return e;
}

Json event_to_names(const Algebra& algebra, Event e) {
    Json names = Json::array();
    for (unsigned i = 0; i < algebra.atom_count(); ++i) {
        if (contains(e, i)) {
            names.push_back(algebra.atom_name(i));
        }
    }
    return names;
}

namespace {

Event event_from_key(const Algebra& algebra, const std::string& key) {
    Event e{0};
    std::size_t start = 0;
    while (start < key.size()) {
        std::size_t comma = key.find(',', start);
        std::string name =
            key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        e.bits |= std::uint32_t{1} << algebra.atom_index(name);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return e;
}

} // namespace

Json model_to_json(const Model& model) {
    const Algebra& alg = model.algebra;
    Json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["atoms"] = alg.atom_names();

    Json selection = Json::object();
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        Json row = Json::object();
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            row[alg.atom_name(alpha)] =
                event_to_names(alg, model.selection.select(Event{a}, alpha));
        }
        selection[event_key(alg, Event{a})] = std::move(row);
    }
    doc["selection"] = std::move(selection);

    Json probability = Json::object();
    for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
        probability[alg.atom_name(alpha)] = rat_str(model.prior.atom_weight(alpha));
    }
    doc["probability"] = std::move(probability);

    if (model.lambda) {
        Json lambda = Json::object();
        for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
            Json row = Json::object();
            for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
                Json cell = Json::object();
                const Event selected = model.selection.select(Event{a}, alpha);
                const std::vector<Rat>& weights = model.lambda->cell(Event{a}, alpha);
                unsigned slot = 0;
                for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
                    if (contains(selected, beta) && slot < weights.size()) {
                        cell[alg.atom_name(beta)] = rat_str(weights[slot]);
                        ++slot;
                    }
                }
                row[alg.atom_name(alpha)] = std::move(cell);
            }
            lambda[event_key(alg, Event{a})] = std::move(row);
        }
        doc["lambda"] = std::move(lambda);
    }
    return doc;
}

Model model_from_json(const Json& doc) {
    const std::string version = expect_string(doc, "schema_version");
    if (version != kModelSchemaVersion) {
        throw ParseError("unsupported schema_version '" + version + "', expected '" +
                         kModelSchemaVersion + "'");
    }

    const Json& atoms = expect(doc, "atoms");
    if (!atoms.is_array() || atoms.empty()) {
        throw ParseError("field 'atoms' must be a non-empty array of names");
    }
    std::vector<std::string> names;
    for (const Json& name : atoms) {
        if (!name.is_string()) {
            throw ParseError("atom names must be strings");
        }
        names.push_back(name.get<std::string>());
    }
    Algebra algebra(std::move(names));

    const Json& selection_doc = expect(doc, "selection");
    if (!selection_doc.is_object()) {
        throw ParseError("field 'selection' must be an object keyed by event");
    }
    SelectionFunction selection = SelectionFunction::filled(algebra, algebra.bottom());
    std::vector<bool> seen(static_cast<std::size_t>(algebra.event_count()) * algebra.atom_count(),
                           false);
    for (const auto& [key, row] : selection_doc.items()) {
        const Event a = event_from_key(algebra, key);
        if (!row.is_object()) {
            throw ParseError("selection row '" + key + "' must map atoms to events");
        }
        for (const auto& [atom_name, value] : row.items()) {
            const AtomIndex alpha = algebra.atom_index(atom_name);
            selection.set(a, alpha, event_from_names(algebra, value));
            seen[a.bits * algebra.atom_count() + alpha] = true;
        }
    }
    for (std::uint32_t a = 0; a < algebra.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < algebra.atom_count(); ++alpha) {
            if (!seen[a * algebra.atom_count() + alpha]) {
                throw ParseError("selection table is not total: missing cell (" +
                                 algebra.event_label(Event{a}) + ", " +
                                 algebra.atom_name(alpha) + ")");
            }
        }
    }

    const Json& prob_doc = expect(doc, "probability");
    if (!prob_doc.is_object()) {
        throw ParseError("field 'probability' must map atom names to rationals");
    }
    std::vector<Rat> weights(algebra.atom_count(), Rat(0));
    std::vector<bool> have(algebra.atom_count(), false);
    for (const auto& [atom_name, value] : prob_doc.items()) {
        if (!value.is_string()) {
            throw ParseError("probability of '" + atom_name + "' must be a \"p/q\" string");
        }
        const AtomIndex alpha = algebra.atom_index(atom_name);
        weights[alpha] = parse_rat(value.get<std::string>());
        have[alpha] = true;
    }
    for (unsigned alpha = 0; alpha < algebra.atom_count(); ++alpha) {
        if (!have[alpha]) {
            throw ParseError("probability missing for atom '" + algebra.atom_name(alpha) + "'");
        }
    }
    ProbabilityDist prior(algebra, std::move(weights));

    std::optional<DistributionFunction> lambda;
    if (doc.contains("lambda")) {
        const Json& lambda_doc = doc.at("lambda");
        if (!lambda_doc.is_object()) {
            throw ParseError("field 'lambda' must be an object keyed by event");
        }
        DistributionFunction lam(selection);
        for (const auto& [key, row] : lambda_doc.items()) {
            const Event a = event_from_key(algebra, key);
            if (is_bottom(a)) {
                throw ParseError("lambda has a row for the bottom antecedent");
            }
            if (!row.is_object()) {
                throw ParseError("lambda row '" + key + "' must map atoms to weight maps");
            }
            for (const auto& [atom_name, cell] : row.items()) {
                const AtomIndex alpha = algebra.atom_index(atom_name);
                if (!cell.is_object()) {
                    throw ParseError("lambda cell (" + key + ", " + atom_name +
                                     ") must map selected atoms to weights");
                }
                const Event selected = selection.select(a, alpha);
                for (const auto& [beta_name, _] : cell.items()) {
                    if (!contains(selected, algebra.atom_index(beta_name))) {
                        throw ValidationError("lambda cell (" + key + ", " + atom_name +
                                              ") puts weight on '" + beta_name +
                                              "', which the selection does not pick");
                    }
                }
                std::vector<Rat> cell_weights;
                for (unsigned beta = 0; beta < algebra.atom_count(); ++beta) {
                    if (!contains(selected, beta)) {
                        continue;
                    }
                    const std::string& beta_name = algebra.atom_name(beta);
                    if (cell.contains(beta_name)) {
                        const Json& w = cell.at(beta_name);
                        if (!w.is_string()) {
                            throw ParseError("lambda weight (" + key + ", " + atom_name + ", " +
                                             beta_name + ") must be a \"p/q\" string");
                        }
                        cell_weights.push_back(parse_rat(w.get<std::string>()));
                    } else {
                        cell_weights.push_back(Rat(0));
                    }
                }
                lam.set_cell(a, alpha, std::move(cell_weights));
            }
        }
        LambdaValidation validation = lam.validate();
        if (!validation.ok) {
            throw ValidationError("invalid lambda: " + validation.violations.front());
        }
        lambda = std::move(lam);
    }

    return Model{std::move(algebra), std::move(selection), std::move(prior), std::move(lambda)};
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open model file '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("model file '" + path + "': " + e.what());
    }
    return model_from_json(doc);
}

void save_model_file(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write model file '" + path + "'");
    }
    out << model_to_json(model).dump(2) << "\n";
}

Json report_to_json(const Report& report) {
    Json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["model_schema_version"] = kModelSchemaVersion;
    doc["mode"] = report.mode_label;
    doc["seed"] = report.seed;
    doc["runtime_ms"] = report.runtime_ms;
    doc["atoms"] = report.atoms;
    Json targets = Json::object();
    for (const auto& [id, target] : report.targets) {
        Json entry;
        entry["checked"] = target.checked;
        entry["passed"] = target.passed;
        Json witnesses = Json::array();
        for (const Witness& w : target.witnesses) {
            Json wj;
            wj["instance"] = w.instance;
            wj["detail"] = w.detail;
            if (w.location) {
                wj["antecedent"] = event_to_names(w.selection.algebra(), w.location->first);
                wj["consequent"] = event_to_names(w.selection.algebra(), w.location->second);
            }
            wj["model"] = model_to_json(Model{w.selection.algebra(), w.selection, w.prior,
                                              w.lambda});
            witnesses.push_back(std::move(wj));
        }
        entry["witnesses"] = std::move(witnesses);
        targets[target_name(id)] = std::move(entry);
    }
    doc["targets"] = std::move(targets);
    return doc;
}

void write_report(const Json& report, const std::string& path) {
    if (path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write report to '" + path + "'");
    }
    out << report.dump(2) << "\n";
}

} // namespace imago
