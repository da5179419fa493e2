#include "demon/scenario.hpp"

#include <fstream>

#include "demon/optimizer.hpp"
#include "demon/seeding.hpp"
#include "demon/tensor.hpp"

namespace demon {

ComplexMatrix cnot_gate(std::size_t control, std::size_t target) {
    if (control > 1 || target > 1 || control == target) {
        throw std::invalid_argument("cnot_gate: control and target must be distinct qubit slots");
    }
    ComplexMatrix m(4, 4);
    for (std::size_t q0 = 0; q0 < 2; ++q0) {
        for (std::size_t q1 = 0; q1 < 2; ++q1) {
            std::size_t bits[2] = {q0, q1};
            if (bits[control] == 1) bits[target] ^= 1u;
            m(bits[0] * 2 + bits[1], q0 * 2 + q1) = cplx{1.0, 0.0};
        }
    }
    return m;
}

ComplexMatrix swap_gate(std::size_t factor_dim) {
    const std::size_t d = factor_dim;
    ComplexMatrix m(d * d, d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            m(b * d + a, a * d + b) = cplx{1.0, 0.0};
        }
    }
    return m;
}

ComplexMatrix hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, 2, {cplx{s, 0}, cplx{s, 0}, cplx{s, 0}, cplx{-s, 0}});
}

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioParseError(path + ": " + what);
}

std::string item(const std::string& path, std::size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

const json& object_at(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    return v;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail(path, "unknown key '" + it.key() + "'");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &it.value();
}

const json& require(const json& obj, const std::string& path, const char* key) {
    const json* v = find(obj, key);
    if (v == nullptr) fail(path, std::string("missing key '") + key + "'");
    return *v;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

double positive_at(const json& v, const std::string& path) {
    const double x = number_at(v, path);
    if (!(x > 0.0)) fail(path, "expected a positive number");
    return x;
}

std::uint64_t unsigned_at(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::size_t index_at(const json& v, const std::string& path) {
    return static_cast<std::size_t>(unsigned_at(v, path));
}

std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

cplx complex_at(const json& v, const std::string& path) {
    if (v.is_number()) return cplx{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return cplx{v[0].get<double>(), v[1].get<double>()};
    }
    fail(path, "expected a real number or an [re, im] pair");
}

ComplexMatrix matrix_at(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of rows");
    const std::size_t rows = v.size();
    if (!v[0].is_array() || v[0].empty()) fail(item(path, 0), "expected a nonempty row");
    const std::size_t cols = v[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array() || v[r].size() != cols) {
            fail(item(path, r), "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = complex_at(v[r][c], item(item(path, r), c));
        }
    }
    return m;
}

ComplexMatrix square_matrix_at(const json& v, const std::string& path, std::size_t expected) {
    ComplexMatrix m = matrix_at(v, path);
    if (m.rows() != m.cols()) fail(path, "expected a square matrix");
    if (expected != 0 && m.rows() != expected) {
        fail(path, "expected dimension " + std::to_string(expected) + ", got " +
                       std::to_string(m.rows()));
    }
    return m;
}

ComplexMatrix ket_at(const json& v, const std::string& path, std::size_t expected) {
    if (!v.is_array() || v.size() != expected) {
        fail(path, "expected a vector of " + std::to_string(expected) + " entries");
    }
    ComplexMatrix ket(expected, 1);
    for (std::size_t i = 0; i < expected; ++i) ket(i, 0) = complex_at(v[i], item(path, i));
    return ket;
}

ComplexMatrix gate_at(const json& obj, const std::string& path, const SubsystemLayout& slot) {
    const std::string gate = string_at(require(obj, path, "gate"), path + ".gate");
    if (gate == "identity") {
        check_keys(obj, path, {"gate"});
        return ComplexMatrix::identity(slot.total_dim());
    }
    if (gate == "cnot") {
        check_keys(obj, path, {"gate", "control", "target"});
        if (slot.factor_count() != 2 || slot.factors()[0].dim != 2 || slot.factors()[1].dim != 2) {
            fail(path, "cnot needs exactly two qubit factors, slot is " + slot.describe());
        }
        return cnot_gate(index_at(require(obj, path, "control"), path + ".control"),
                         index_at(require(obj, path, "target"), path + ".target"));
    }
    if (gate == "swap") {
        check_keys(obj, path, {"gate"});
        if (slot.factor_count() != 2 || slot.factors()[0].dim != slot.factors()[1].dim) {
            fail(path, "swap needs two factors of equal dimension, slot is " + slot.describe());
        }
        return swap_gate(slot.factors()[0].dim);
    }
    if (gate == "hadamard") {
        check_keys(obj, path, {"gate"});
        if (slot.total_dim() != 2) fail(path, "hadamard needs a two-dimensional slot");
        return hadamard_gate();
    }
    fail(path + ".gate", "unknown gate '" + gate + "'");
}

ComplexMatrix unitary_at(const json& v, const std::string& path, const SubsystemLayout& slot) {
    if (v.is_array()) return square_matrix_at(v, path, slot.total_dim());
    object_at(v, path);
    if (find(v, "gate") != nullptr) return gate_at(v, path, slot);
    if (const json* seed = find(v, "haar_seed")) {
        check_keys(v, path, {"haar_seed"});
        return haar_random_unitary(slot.total_dim(), unsigned_at(*seed, path + ".haar_seed"));
    }
    if (const json* generator = find(v, "generator")) {
        check_keys(v, path, {"generator"});
        const std::size_t d = slot.total_dim();
        if (!generator->is_array() || generator->size() != generator_parameter_count(d)) {
            fail(path + ".generator", "expected " + std::to_string(generator_parameter_count(d)) +
                                          " coordinates for dimension " + std::to_string(d));
        }
        std::vector<double> theta;
        for (std::size_t i = 0; i < generator->size(); ++i) {
            theta.push_back(number_at((*generator)[i], item(path + ".generator", i)));
        }
        return unitary_from_parameters(theta, d);
    }
    fail(path, "expected a matrix, a gate, a haar_seed or a generator");
}

MeasurementBasis basis_at(const json& v, const std::string& path, std::size_t dim) {
    object_at(v, path);
    if (const json* named = find(v, "named")) {
        check_keys(v, path, {"named"});
        const std::string name = string_at(*named, path + ".named");
        if (name == "computational") return MeasurementBasis::computational(dim);
        if (name == "hadamard") {
            if (dim != 2) fail(path, "the hadamard basis needs a qubit");
            return MeasurementBasis::hadamard();
        }
        fail(path + ".named", "unknown basis '" + name + "'");
    }
    if (const json* bloch = find(v, "bloch")) {
        check_keys(v, path, {"bloch"});
        object_at(*bloch, path + ".bloch");
        check_keys(*bloch, path + ".bloch", {"theta", "phi"});
        if (dim != 2) fail(path, "a bloch basis needs a qubit");
        return MeasurementBasis::from_bloch(
            number_at(require(*bloch, path + ".bloch", "theta"), path + ".bloch.theta"),
            number_at(require(*bloch, path + ".bloch", "phi"), path + ".bloch.phi"));
    }
    if (const json* vectors = find(v, "vectors")) {
        check_keys(v, path, {"vectors"});
        if (!vectors->is_array() || vectors->size() != dim) {
            fail(path + ".vectors", "expected " + std::to_string(dim) + " basis vectors");
        }
        ComplexMatrix columns(dim, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const ComplexMatrix ket = ket_at((*vectors)[k], item(path + ".vectors", k), dim);
            for (std::size_t i = 0; i < dim; ++i) columns(i, k) = ket(i, 0);
        }
        try {
            return MeasurementBasis("custom", columns);
        } catch (const std::exception& e) {
            fail(path + ".vectors", e.what());
        }
    }
    fail(path, "expected 'named', 'bloch' or 'vectors'");
}

SubsystemLayout ab_layout(std::size_t da, std::size_t db) {
    return SubsystemLayout({{"A", da}, {"B", db}});
}

DensityMatrix state_at(const json& v, const std::string& path) {
    object_at(v, path);
    if (const json* named = find(v, "named")) {
        check_keys(v, path, {"named"});
        const std::string name = string_at(*named, path + ".named");
        if (name == "bell") return bell_state();
        fail(path + ".named", "unknown state '" + name + "'");
    }
    const json& dims = require(v, path, "dims");
    if (!dims.is_array() || dims.size() != 2) {
        fail(path + ".dims", "expected [ancilla_dim, memory_dim]");
    }
    const std::size_t da = index_at(dims[0], path + ".dims[0]");
    const std::size_t db = index_at(dims[1], path + ".dims[1]");
    if (da == 0 || db == 0) fail(path + ".dims", "dimensions must be positive");
    const SubsystemLayout layout = ab_layout(da, db);

    if (const json* matrix = find(v, "matrix")) {
        check_keys(v, path, {"dims", "matrix"});
        try {
            return DensityMatrix(square_matrix_at(*matrix, path + ".matrix", da * db), layout);
        } catch (const ScenarioParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(path + ".matrix", e.what());
        }
    }
    if (const json* pure = find(v, "pure")) {
        check_keys(v, path, {"dims", "pure"});
        try {
            return pure_state(ket_at(*pure, path + ".pure", da * db), layout);
        } catch (const ScenarioParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(path + ".pure", e.what());
        }
    }
    if (const json* random = find(v, "random")) {
        check_keys(v, path, {"dims", "random"});
        object_at(*random, path + ".random");
        check_keys(*random, path + ".random", {"rank", "seed"});
        const std::size_t rank =
            index_at(require(*random, path + ".random", "rank"), path + ".random.rank");
        const std::uint64_t seed =
            unsigned_at(require(*random, path + ".random", "seed"), path + ".random.seed");
        if (rank == 0 || rank > da * db) fail(path + ".random.rank", "rank out of range");
        return random_density_matrix(layout, rank, seed);
    }
    fail(path, "expected 'named', 'matrix', 'pure' or 'random'");
}

std::vector<ComplexMatrix> feedback_at(const json& v, const std::string& path,
                                       const SubsystemLayout& slot, std::size_t outcomes) {
    if (!v.is_array() || v.size() != outcomes) {
        fail(path, "expected one unitary per measurement outcome (" + std::to_string(outcomes) +
                       ")");
    }
    std::vector<ComplexMatrix> feedback;
    for (std::size_t k = 0; k < outcomes; ++k) {
        feedback.push_back(unitary_at(v[k], item(path, k), slot));
    }
    return feedback;
}

} // namespace

ScenarioDocument parse_scenario_json(const json& doc) {
    object_at(doc, "document");
    check_keys(doc, "document",
               {"schema_version", "mode", "label", "boltzmann", "system", "reservoirs", "rho_ab",
                "interaction", "premeasure", "basis", "feedback", "seed", "second_basis",
                "second_feedback", "second_hamiltonian_final"});
    if (unsigned_at(require(doc, "document", "schema_version"), "schema_version") != 1) {
        fail("schema_version", "only version 1 is understood");
    }

    ScenarioDocument::Mode mode = ScenarioDocument::Mode::single;
    if (const json* mode_key = find(doc, "mode")) {
        const std::string name = string_at(*mode_key, "mode");
        if (name == "two_engine") {
            mode = ScenarioDocument::Mode::two_engine;
        } else if (name != "single") {
            fail("mode", "expected 'single' or 'two_engine'");
        }
    }

    const double boltzmann =
        find(doc, "boltzmann") ? positive_at(*find(doc, "boltzmann"), "boltzmann") : 1.0;

    const json& system = object_at(require(doc, "document", "system"), "system");
    check_keys(system, "system", {"temperature", "hamiltonian_initial", "hamiltonian_final"});
    const double temperature =
        find(system, "temperature") ? positive_at(*find(system, "temperature"), "system.temperature")
                                    : 1.0;
    const ComplexMatrix h_s_initial = square_matrix_at(
        require(system, "system", "hamiltonian_initial"), "system.hamiltonian_initial", 0);
    const ComplexMatrix h_s_final =
        find(system, "hamiltonian_final")
            ? square_matrix_at(*find(system, "hamiltonian_final"), "system.hamiltonian_final",
                               h_s_initial.rows())
            : h_s_initial;

    std::vector<HamiltonianTerm> reservoirs;
    if (const json* list = find(doc, "reservoirs")) {
        if (!list->is_array()) fail("reservoirs", "expected an array");
        for (std::size_t m = 0; m < list->size(); ++m) {
            const std::string path = item("reservoirs", m);
            const json& r = object_at((*list)[m], path);
            check_keys(r, path, {"name", "temperature", "hamiltonian"});
            reservoirs.push_back(
                {string_at(require(r, path, "name"), path + ".name"),
                 square_matrix_at(require(r, path, "hamiltonian"), path + ".hamiltonian", 0),
                 positive_at(require(r, path, "temperature"), path + ".temperature")});
        }
    }

    DensityMatrix rho_ab = state_at(require(doc, "document", "rho_ab"), "rho_ab");
    const std::size_t da = rho_ab.layout().dim_of("A");

    std::vector<SubsystemLayout::Factor> sr_factors{{"S", h_s_initial.rows()}};
    for (const auto& r : reservoirs) sr_factors.push_back({r.name, r.matrix.rows()});
    const SubsystemLayout sr_slot(sr_factors);
    const SubsystemLayout sa_slot({{"S", h_s_initial.rows()}, {"A", da}});

    const ComplexMatrix interaction =
        unitary_at(require(doc, "document", "interaction"), "interaction", sr_slot);
    const ComplexMatrix premeasure =
        find(doc, "premeasure") ? unitary_at(*find(doc, "premeasure"), "premeasure", sa_slot)
                                : ComplexMatrix::identity(sa_slot.total_dim());
    MeasurementBasis basis = basis_at(require(doc, "document", "basis"), "basis", da);
    std::vector<ComplexMatrix> feedback =
        feedback_at(require(doc, "document", "feedback"), "feedback", sr_slot, da);

    const std::uint64_t seed = find(doc, "seed") ? unsigned_at(*find(doc, "seed"), "seed") : 0;
    const std::string label =
        find(doc, "label") ? string_at(*find(doc, "label"), "label") : "scenario";

    EngineScenario first{label,
                         {"S", h_s_initial, temperature},
                         {"S", h_s_final, temperature},
                         temperature,
                         boltzmann,
                         reservoirs,
                         rho_ab,
                         interaction,
                         premeasure,
                         basis,
                         feedback,
                         seed};
    try {
        first.validate();
    } catch (const std::exception& e) {
        throw ScenarioParseError(std::string("scenario rejected: ") + e.what());
    }

    const bool two = mode == ScenarioDocument::Mode::two_engine;
    for (const char* key : {"second_basis", "second_feedback", "second_hamiltonian_final"}) {
        if (!two && find(doc, key) != nullptr) {
            fail(key, "only meaningful in two_engine mode");
        }
    }
    std::optional<EngineScenario> second;
    if (two) {
        EngineScenario other = first;
        other.label = label + "-second";
        other.basis = basis_at(require(doc, "document", "second_basis"), "second_basis", da);
        if (const json* f = find(doc, "second_feedback")) {
            other.feedback = feedback_at(*f, "second_feedback", sr_slot, da);
        }
        if (const json* h = find(doc, "second_hamiltonian_final")) {
            other.h_s_final.matrix = square_matrix_at(*h, "second_hamiltonian_final",
                                                      h_s_initial.rows());
        }
        try {
            other.validate();
        } catch (const std::exception& e) {
            throw ScenarioParseError(std::string("second scenario rejected: ") + e.what());
        }
        second = std::move(other);
    }
    return ScenarioDocument{mode, std::move(first), std::move(second)};
}

ScenarioDocument parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError(path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(path + ": " + e.what());
    }
    return parse_scenario_json(doc);
}

namespace {

ComplexMatrix qubit_gap() {
    ComplexMatrix h(2, 2);
    h(1, 1) = cplx{1.0, 0.0};
    return h;
}

DensityMatrix ground_pair() {
    return pure_state(kron(basis_ket(2, 0), basis_ket(2, 0)), ab_layout(2, 2));
}

ScenarioDocument szilard_builtin(std::uint64_t seed) {
    EngineScenario first{"szilard",
                         {"S", ComplexMatrix(2, 2), 1.0},
                         {"S", ComplexMatrix(2, 2), 1.0},
                         1.0,
                         1.0,
                         {},
                         ground_pair(),
                         ComplexMatrix::identity(2),
                         cnot_gate(0, 1),
                         MeasurementBasis::computational(2),
                         {ComplexMatrix::identity(2), ComplexMatrix::identity(2)},
                         seed};
    return ScenarioDocument{ScenarioDocument::Mode::single, std::move(first), std::nullopt};
}

ScenarioDocument do_nothing_builtin(std::uint64_t seed) {
    EngineScenario first{"do-nothing",
                         {"S", qubit_gap(), 1.0},
                         {"S", qubit_gap(), 1.0},
                         1.0,
                         1.0,
                         {{"R1", qubit_gap(), 1.0}},
                         ground_pair(),
                         ComplexMatrix::identity(4),
                         ComplexMatrix::identity(4),
                         MeasurementBasis::computational(2),
                         {ComplexMatrix::identity(4), ComplexMatrix::identity(4)},
                         seed};
    return ScenarioDocument{ScenarioDocument::Mode::single, std::move(first), std::nullopt};
}

// The interaction dumps the hot qubit state onto the cold one before a
// seeded scramble of S with the cold qubit, so the hot bath always loses
// heat and the efficiency is defined for every seed. Feedback stays on
// S and the cold qubit for the same reason.
ScenarioDocument carnot2_builtin(std::uint64_t seed) {
    const SubsystemLayout sr({{"S", 2}, {"RH", 2}, {"RC", 2}});
    const std::string system_cold[] = {"S", "RC"};
    const std::string hot_cold[] = {"RH", "RC"};
    const ComplexMatrix interaction =
        embed(haar_random_unitary(4, derive_seed(seed, 1)), sr, system_cold) *
        embed(swap_gate(2), sr, hot_cold);
    EngineScenario first{"carnot2",
                         {"S", ComplexMatrix(2, 2), 2.0},
                         {"S", ComplexMatrix(2, 2), 2.0},
                         2.0,
                         1.0,
                         {{"RH", qubit_gap(), 2.0}, {"RC", qubit_gap(), 1.0}},
                         ground_pair(),
                         interaction,
                         cnot_gate(0, 1),
                         MeasurementBasis::computational(2),
                         {embed(haar_random_unitary(4, derive_seed(seed, 100)), sr, system_cold),
                          embed(haar_random_unitary(4, derive_seed(seed, 101)), sr, system_cold)},
                         seed};
    return ScenarioDocument{ScenarioDocument::Mode::single, std::move(first), std::nullopt};
}

ScenarioDocument eur_bell_builtin(std::uint64_t seed) {
    EngineScenario first{"eur-bell",
                         {"S", ComplexMatrix(2, 2), 1.0},
                         {"S", ComplexMatrix(2, 2), 1.0},
                         1.0,
                         1.0,
                         {{"R1", qubit_gap(), 1.0}},
                         bell_state(),
                         ComplexMatrix::identity(4),
                         ComplexMatrix::identity(4),
                         MeasurementBasis::computational(2),
                         {ComplexMatrix::identity(4), ComplexMatrix::identity(4)},
                         seed};
    EngineScenario second = first;
    second.label = "eur-bell-second";
    second.basis = MeasurementBasis::hadamard();
    return ScenarioDocument{ScenarioDocument::Mode::two_engine, std::move(first),
                            std::move(second)};
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"szilard", "carnot2", "eur-bell", "do-nothing"};
}

ScenarioDocument builtin_scenario(const std::string& name, std::uint64_t seed) {
    if (name == "szilard") return szilard_builtin(seed);
    if (name == "carnot2") return carnot2_builtin(seed);
    if (name == "eur-bell") return eur_bell_builtin(seed);
    if (name == "do-nothing") return do_nothing_builtin(seed);
    throw ScenarioParseError("unknown builtin '" + name + "'; see list-builtins");
}

} // namespace demon
