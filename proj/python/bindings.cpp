#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imago/errors.hpp"
#include "imago/model_io.hpp"
#include "imago/worked_example.hpp"

namespace py = pybind11;
using namespace imago;

namespace {

py::object to_fraction(const Rat& value) {
    return py::module_::import("fractions").attr("Fraction")(rat_str(value));
}

Rat rat_from_py(const py::handle& value) {
    if (py::isinstance<py::int_>(value)) {
        return Rat(value.cast<long>());
    }
    if (py::isinstance<py::float_>(value)) {
        throw py::type_error("rationals must be exact: pass str or fractions.Fraction");
    }
    return parse_rat(py::str(value).cast<std::string>());
}

std::vector<Rat> rats_from_py(const py::sequence& seq) {
    std::vector<Rat> out;
    out.reserve(py::len(seq));
    for (const py::handle& item : seq) {
        out.push_back(rat_from_py(item));
    }
    return out;
}

PropertySet properties_from_py(const py::object& names) {
    PropertySet set;
    if (names.is_none()) {
        return set;
    }
    for (const py::handle& item : names.cast<py::sequence>()) {
        const std::string name = py::str(item).cast<std::string>();
        auto p = parse_property(name);
        if (!p) {
            throw py::value_error("unknown frame property '" + name + "'");
        }
        set.insert(*p);
    }
    return set;
}

FrameProperty property_from_py(const std::string& name) {
    auto p = parse_property(name);
    if (!p) {
        throw py::value_error("unknown frame property '" + name + "'");
    }
    return *p;
}

Event event_arg(const Algebra& alg, std::uint32_t bits) {
    Event e{bits};
    alg.require_valid(e);
    return e;
}

py::object json_to_py(const Json& doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

py::object location_to_py(const std::optional<std::pair<Event, Event>>& loc) {
    if (!loc) {
        return py::none();
    }
    return py::make_tuple(loc->first.bits, loc->second.bits);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "selection-function conditionals, imaged beliefs and exact lambda updates";

    py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);
    py::register_exception<UnsatisfiableConstraintsError>(m, "UnsatisfiableConstraintsError",
                                                          PyExc_ValueError);
    // Leaked on purpose: destroying a py::object after interpreter
    // finalization aborts.
    static auto* base_error = new py::exception<Error>(m, "ImagoError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const BudgetExceededError&) {
            throw;
        } catch (const UnsatisfiableConstraintsError&) {
            throw;
        } catch (const Error& e) {
            py::set_error(*base_error, e.what());
        }
    });

    py::class_<Algebra>(m, "Algebra")
        .def(py::init<unsigned>(), py::arg("atom_count"))
        .def(py::init<std::vector<std::string>>(), py::arg("atom_names"))
        .def_property_readonly("atom_count", &Algebra::atom_count)
        .def_property_readonly("atom_names", &Algebra::atom_names)
        .def_property_readonly("top", [](const Algebra& a) { return a.top().bits; })
        .def_property_readonly("bottom", [](const Algebra& a) { return a.bottom().bits; })
        .def_property_readonly("event_count", &Algebra::event_count)
        .def("event_label",
             [](const Algebra& a, std::uint32_t bits) { return a.event_label(event_arg(a, bits)); })
        .def("event_of",
             [](const Algebra& a, const std::vector<std::string>& names) {
                 Event e{0};
                 for (const auto& name : names) {
                     e.bits |= std::uint32_t{1} << a.atom_index(name);
                 }
                 return e.bits;
             })
        .def("atoms_of",
             [](const Algebra& a, std::uint32_t bits) { return a.atoms_of(event_arg(a, bits)); })
        .def("__repr__", [](const Algebra& a) {
            return "Algebra(" + std::to_string(a.atom_count()) + " atoms)";
        });

    py::class_<SelectionFunction>(m, "SelectionFunction")
        .def(py::init([](const Algebra& alg, const std::vector<std::uint32_t>& table) {
                 std::vector<Event> cells;
                 cells.reserve(table.size());
                 for (std::uint32_t bits : table) {
                     cells.push_back(Event{bits});
                 }
                 return SelectionFunction(alg, std::move(cells));
             }),
             py::arg("algebra"), py::arg("table"))
        .def_property_readonly("algebra", &SelectionFunction::algebra)
        .def("select",
             [](const SelectionFunction& f, std::uint32_t a, unsigned alpha) {
                 f.algebra().require_valid(Event{a});
                 f.algebra().require_valid_atom(alpha);
                 return f.select(Event{a}, alpha).bits;
             })
        .def("set",
             [](SelectionFunction& f, std::uint32_t a, unsigned alpha, std::uint32_t value) {
                 f.set(Event{a}, alpha, Event{value});
             })
        .def_property_readonly("table",
                               [](const SelectionFunction& f) {
                                   std::vector<std::uint32_t> bits;
                                   bits.reserve(f.table().size());
                                   for (Event e : f.table()) {
                                       bits.push_back(e.bits);
                                   }
                                   return bits;
                               })
        .def("__eq__", [](const SelectionFunction& a, const SelectionFunction& b) { return a == b; });

    m.def("check_property", [](const SelectionFunction& f, const std::string& name) {
        return check_property(f, property_from_py(name));
    });
    m.def("properties_of", [](const SelectionFunction& f) {
        std::vector<std::string> names;
        for (FrameProperty p : properties_of(f).to_vector()) {
            names.emplace_back(property_name(p));
        }
        return names;
    });
    m.def("classify", [](const SelectionFunction& f) {
        Classification c = classify(f);
        py::dict out;
        std::vector<std::string> properties;
        for (FrameProperty p : c.properties.to_vector()) {
            properties.emplace_back(property_name(p));
        }
        std::vector<std::string> classes;
        for (ConditionalClass cc : c.classes) {
            classes.emplace_back(conditional_class_name(cc));
        }
        out["properties"] = properties;
        out["classes"] = classes;
        out["strongest"] = conditional_class_name(c.strongest);
        return out;
    });
    m.def("strict_uniqueness_at", [](const SelectionFunction& f, std::uint32_t a) {
        return strict_uniqueness_at(f, event_arg(f.algebra(), a));
    });
    m.def("strict_uniqueness_above_bottom", &strict_uniqueness_above_bottom);

    py::class_<SelectionFunctionEnumerator>(m, "SelectionFunctionEnumerator")
        .def("__iter__",
             [](SelectionFunctionEnumerator& stream) -> SelectionFunctionEnumerator& {
                 return stream;
             })
        .def("__next__",
             [](SelectionFunctionEnumerator& stream) {
                 auto f = stream.next();
                 if (!f) {
                     throw py::stop_iteration();
                 }
                 return *f;
             })
        .def_property_readonly("space_size", &SelectionFunctionEnumerator::space_size);
    m.def(
        "enumerate_selection_functions",
        [](const Algebra& alg, const py::object& constraints, std::uint64_t budget) {
            return SelectionFunctionEnumerator(alg, properties_from_py(constraints), budget);
        },
        py::arg("algebra"), py::arg("constraints") = py::none(),
        py::arg("budget") = kDefaultEnumerationBudget);

    m.def("sample_selection_function",
          [](const Algebra& alg, const py::object& constraints, std::uint64_t seed,
             unsigned retry_cap) {
              return sample_selection_function(alg, properties_from_py(constraints), seed,
                                               retry_cap);
          },
          py::arg("algebra"), py::arg("constraints") = py::none(), py::arg("seed") = 0,
          py::arg("retry_cap") = kDefaultSampleRetryCap);
    m.def("sample_stalnaker_selection", &sample_stalnaker_selection, py::arg("algebra"),
          py::arg("seed") = 0);
    m.def("sample_preorder_selection", &sample_preorder_selection, py::arg("algebra"),
          py::arg("seed") = 0, py::arg("centered") = false, py::arg("linear") = false);
    m.def("antecedent_selection", &antecedent_selection);
    m.def("centered_least_selection", &centered_least_selection);
    m.def("worked_example_selection", &worked_example_selection);

    m.def("conditional", [](const SelectionFunction& f, std::uint32_t a, std::uint32_t b) {
        return conditional(f, event_arg(f.algebra(), a), event_arg(f.algebra(), b)).bits;
    });
    m.def("box", [](const SelectionFunction& f, std::uint32_t a, std::uint32_t b) {
        return box(f, event_arg(f.algebra(), a), event_arg(f.algebra(), b)).bits;
    });
    m.def("diamond", [](const SelectionFunction& f, std::uint32_t a, std::uint32_t b) {
        return diamond(f, event_arg(f.algebra(), a), event_arg(f.algebra(), b)).bits;
    });
    m.def("check_fact1_row", [](const SelectionFunction& f, const std::string& row) {
        Fact1Row r = check_fact1_row(f, property_from_py(row));
        return py::make_tuple(r.lhs, r.rhs);
    });

    py::class_<ProbabilityDist>(m, "ProbabilityDist")
        .def(py::init([](const Algebra& alg, const py::sequence& weights) {
                 return ProbabilityDist(alg, rats_from_py(weights));
             }),
             py::arg("algebra"), py::arg("atom_weights"))
        .def_property_readonly("algebra", &ProbabilityDist::algebra)
        .def_property_readonly("weights",
                               [](const ProbabilityDist& d) {
                                   py::list out;
                                   for (const Rat& w : d.weights()) {
                                       out.append(to_fraction(w));
                                   }
                                   return out;
                               })
        .def("prob", [](const ProbabilityDist& d, std::uint32_t x) {
            return to_fraction(d.prob(event_arg(d.algebra(), x)));
        })
        .def_static("sample",
                    [](const Algebra& alg, std::uint64_t seed, unsigned max_weight) {
                        Rng rng(seed);
                        return ProbabilityDist::sample(alg, rng, max_weight);
                    },
                    py::arg("algebra"), py::arg("seed") = 0, py::arg("max_weight") = 1000);

    m.def("prob_conditional",
          [](const ProbabilityDist& d, const SelectionFunction& f, std::uint32_t a,
             std::uint32_t b) {
              return to_fraction(
                  prob_conditional(d, f, event_arg(f.algebra(), a), event_arg(f.algebra(), b)));
          });
    m.def("imaged_mass",
          [](const ProbabilityDist& d, const SelectionFunction& f, std::uint32_t a) {
              MassDistribution mass = imaged_mass(d, f, event_arg(f.algebra(), a));
              py::dict out;
              for (const auto& [event, value] : mass.entries) {
                  out[py::int_(event.bits)] = to_fraction(value);
              }
              return out;
          });
    m.def("imaged_belief",
          [](const ProbabilityDist& d, const SelectionFunction& f, std::uint32_t a,
             std::uint32_t b) {
              return to_fraction(
                  imaged_belief(d, f, event_arg(f.algebra(), a), event_arg(f.algebra(), b)));
          });
    m.def("proposition1_report",
          [](const ProbabilityDist& d, const SelectionFunction& f, std::uint32_t a) {
              Prop1Report r = proposition1_report(d, f, event_arg(f.algebra(), a));
              py::dict out;
              out["additive"] = r.additive;
              out["unique"] = r.unique;
              out["functional"] = r.functional;
              out["box_eq_diamond"] = r.box_eq_diamond;
              out["consistent"] = r.consistent();
              out["witness"] = location_to_py(r.witness);
              return out;
          });

    py::class_<DistributionFunction>(m, "DistributionFunction")
        .def_property_readonly("selection", &DistributionFunction::selection)
        .def("cell",
             [](const DistributionFunction& lam, std::uint32_t a, unsigned alpha) {
                 py::list out;
                 for (const Rat& w : lam.cell(event_arg(lam.algebra(), a), alpha)) {
                     out.append(to_fraction(w));
                 }
                 return out;
             })
        .def("weight",
             [](const DistributionFunction& lam, std::uint32_t a, unsigned alpha, unsigned beta) {
                 return to_fraction(lam.weight(event_arg(lam.algebra(), a), alpha, beta));
             })
        .def("set_cell",
             [](DistributionFunction& lam, std::uint32_t a, unsigned alpha,
                const py::sequence& weights) {
                 lam.set_cell(event_arg(lam.algebra(), a), alpha, rats_from_py(weights));
             })
        .def("validate", [](const DistributionFunction& lam) {
            LambdaValidation v = lam.validate();
            return py::make_tuple(v.ok, v.violations);
        });

    m.def("build_lambda",
          [](const std::string& kind, const ProbabilityDist& dist, const SelectionFunction& f) {
              if (kind == "uniform") {
                  return build_lambda(LambdaKind::Uniform, dist, f);
              }
              if (kind == "lewis") {
                  return build_lambda(LambdaKind::Lewis, dist, f);
              }
              if (kind == "bayes") {
                  return build_lambda(LambdaKind::Bayes, dist, f);
              }
              throw py::value_error("lambda kind must be uniform, lewis, or bayes");
          },
          py::arg("kind"), py::arg("dist"), py::arg("selection"));
    m.def("random_lambda",
          [](const SelectionFunction& f, std::uint64_t seed, unsigned max_weight) {
              Rng rng(seed);
              return DistributionFunction::random(f, rng, max_weight);
          },
          py::arg("selection"), py::arg("seed") = 0, py::arg("max_weight") = 1000);

    m.def("updated_atom_dist",
          [](const ProbabilityDist& d, const DistributionFunction& lam, std::uint32_t a) {
              py::list out;
              for (const Rat& w : updated_atom_dist(d, lam, event_arg(lam.algebra(), a))) {
                  out.append(to_fraction(w));
              }
              return out;
          });
    m.def("updated_prob",
          [](const ProbabilityDist& d, const DistributionFunction& lam, std::uint32_t a,
             std::uint32_t b) {
              return to_fraction(
                  updated_prob(d, lam, event_arg(lam.algebra(), a), event_arg(lam.algebra(), b)));
          });
    m.def("lambda_gap",
          [](const ProbabilityDist& d, const SelectionFunction& f,
             const DistributionFunction& lam, std::uint32_t a, std::uint32_t b) {
              return to_fraction(
                  lambda_gap(d, f, lam, event_arg(f.algebra(), a), event_arg(f.algebra(), b)));
          });
    m.def("fact7_check",
          [](const ProbabilityDist& d, const SelectionFunction& f,
             const DistributionFunction& lam) {
              Fact7Result r = fact7_check(d, f, lam);
              py::dict out;
              out["holds"] = r.holds;
              out["max_gap"] = to_fraction(r.max_gap);
              out["witness"] = location_to_py(r.witness);
              return out;
          });
    m.def("theorem1_check",
          [](const ProbabilityDist& d, const SelectionFunction& f,
             const DistributionFunction& lam) {
              Theorem1Result r = theorem1_check(d, f, lam);
              py::dict out;
              out["equality_forall"] = r.equality_forall;
              out["uniqueness"] = r.uniqueness;
              out["agree"] = r.agree();
              out["witness"] = location_to_py(r.witness);
              return out;
          });
    m.def("find_strict_gap",
          [](const ProbabilityDist& d, const SelectionFunction& f,
             const DistributionFunction& lam) {
              return location_to_py(find_strict_gap(d, f, lam));
          });
    m.def("find_theorem1_counterexample",
          [](const Algebra& alg, std::uint64_t seed) -> py::object {
              auto model = find_theorem1_counterexample(alg, seed);
              if (!model) {
                  return py::none();
              }
              py::dict out;
              out["selection"] = py::cast(model->selection);
              out["prior"] = py::cast(model->prior);
              out["lambda"] = py::cast(model->lambda);
              out["antecedent"] = model->antecedent.bits;
              out["consequent"] = model->consequent.bits;
              out["conditional_prob"] = to_fraction(model->conditional_prob);
              out["updated_prob"] = to_fraction(model->updated_prob_value);
              return out;
          },
          py::arg("algebra"), py::arg("seed") = 0);

    m.def("run_campaign",
          [](unsigned atoms, const std::string& mode, const std::string& targets,
             std::uint64_t trials, std::uint64_t seed, const py::object& constraints,
             bool non_unique_only, unsigned workers, std::uint64_t budget) {
              Campaign campaign{Algebra(atoms)};
              if (mode == "exhaustive") {
                  campaign.mode = CampaignMode::Exhaustive;
              } else if (mode == "sampled") {
                  campaign.mode = CampaignMode::Sampled;
              } else {
                  throw py::value_error("mode must be exhaustive or sampled");
              }
              campaign.targets = parse_target_list(targets);
              campaign.trials = trials;
              campaign.seed = seed;
              campaign.constraints = properties_from_py(constraints);
              campaign.non_unique_only = non_unique_only;
              campaign.workers = workers;
              campaign.budget = budget;
              return json_to_py(report_to_json(run_campaign(campaign)));
          },
          py::arg("atoms"), py::arg("mode") = "exhaustive", py::arg("targets") = "all",
          py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("constraints") = py::none(),
          py::arg("non_unique_only") = false, py::arg("workers") = 1,
          py::arg("budget") = kDefaultEnumerationBudget);

    py::class_<WorkedExample>(m, "WorkedExample")
        .def_readonly("algebra", &WorkedExample::algebra)
        .def_readonly("selection", &WorkedExample::selection)
        .def_readonly("prior", &WorkedExample::prior)
        .def_readonly("lambda_", &WorkedExample::lambda)
        .def_property_readonly("antecedent",
                               [](const WorkedExample& ex) { return ex.antecedent.bits; })
        .def_property_readonly("consequent",
                               [](const WorkedExample& ex) { return ex.consequent.bits; });
    m.def("make_worked_example", [] { return make_worked_example(); });

    m.def("model_to_dict",
          [](const SelectionFunction& f, const ProbabilityDist& dist, const py::object& lam) {
              std::optional<DistributionFunction> lambda;
              if (!lam.is_none()) {
                  lambda = lam.cast<DistributionFunction>();
              }
              return json_to_py(model_to_json(Model{f.algebra(), f, dist, std::move(lambda)}));
          },
          py::arg("selection"), py::arg("prior"), py::arg("lambda_") = py::none());
    m.def("load_model_file", [](const std::string& path) {
        Model model = load_model_file(path);
        py::dict out;
        out["algebra"] = py::cast(model.algebra);
        out["selection"] = py::cast(model.selection);
        out["prior"] = py::cast(model.prior);
        out["lambda_"] = model.lambda ? py::cast(*model.lambda) : py::none().cast<py::object>();
        return out;
    });

    m.attr("DEFAULT_ENUMERATION_BUDGET") = kDefaultEnumerationBudget;
    m.attr("FRAME_PROPERTIES") = [] {
        std::vector<std::string> names;
        for (FrameProperty p : all_frame_properties()) {
            names.emplace_back(property_name(p));
        }
        return names;
    }();
}
