#include "greedylab/basis.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "greedylab/errors.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {
namespace {

using json = nlohmann::json;

double holder_conjugate(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double lp_of(const Vector& v, double p) {
    if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
    if (p == 1.0) return v.cwiseAbs().sum();
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_exponent(const std::string& s, std::string_view id) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0.0)) throw std::invalid_argument("bad exponent");
        return v;
    } catch (const std::exception&) {
        throw UsageError("basis id '" + std::string(id) + "': bad exponent '" + s + "'");
    }
}

int parse_positive(const std::string& s, std::string_view id) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size() || v < 1 || v > 4096) throw std::invalid_argument("bad size");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw UsageError("basis id '" + std::string(id) + "': bad size '" + s + "'");
    }
}

double json_exponent(const json& j, const char* key) {
    if (!j.contains(key)) throw UsageError(std::string("space: missing key '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw UsageError(std::string("space: key '") + key + "' must be a number or \"inf\"");
    }
    if (!v.is_number()) throw UsageError(std::string("space: key '") + key + "' must be a number");
    return v.get<double>();
}

Matrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw UsageError(std::string(what) + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw UsageError(std::string(what) + ": ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& x = row.at(static_cast<std::size_t>(c));
            if (!x.is_number()) throw UsageError(std::string(what) + ": non-numeric entry");
            m(r, c) = x.get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

QuasiNorm space_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("space: expected an object");
    const auto kind = j.value("kind", std::string{});
    auto dim = [&]() -> int {
        if (!j.contains("dim") || !j.at("dim").is_number_integer()) throw UsageError("space: missing integer 'dim'");
        return j.at("dim").get<int>();
    };
    QuasiNorm space = [&]() {
        if (kind == "lp") return QuasiNorm::lp(json_exponent(j, "p"), dim());
        if (kind == "weak_lp") return QuasiNorm::weak_lp(json_exponent(j, "p"), dim());
        if (kind == "lorentz") {
            std::optional<double> pc;
            if (j.contains("p_convexity")) pc = j.at("p_convexity").get<double>();
            return QuasiNorm::lorentz(json_exponent(j, "p"), json_exponent(j, "q"), dim(), pc);
        }
        if (kind == "l2blocks") {
            if (!j.contains("blocks") || !j.at("blocks").is_array()) throw UsageError("space: l2blocks needs 'blocks'");
            return QuasiNorm::l2_blocks(json_exponent(j, "outer_p"), j.at("blocks").get<std::vector<int>>());
        }
        if (kind == "linear_image") {
            if (!j.contains("base") || !j.contains("matrix")) throw UsageError("space: linear_image needs 'base' and 'matrix'");
            return QuasiNorm::linear_image(space_from_json(j.at("base")), matrix_from_json(j.at("matrix"), "matrix"));
        }
        throw UsageError("space: unknown kind '" + kind + "'");
    }();
    if (j.contains("p_convexity") && kind != "lorentz") space = space.with_p_convexity(j.at("p_convexity").get<double>());
    return space;
}

json exponent_json(double p) {
    if (std::isinf(p)) return "inf";
    return p;
}

json space_to_json(const QuasiNorm& s) {
    json j;
    switch (s.kind()) {
        case SpaceKind::lp: j = {{"kind", "lp"}, {"p", exponent_json(s.p())}, {"dim", s.dimension()}}; break;
        case SpaceKind::weak_lp: j = {{"kind", "weak_lp"}, {"p", s.p()}, {"dim", s.dimension()}}; break;
        case SpaceKind::lorentz:
            j = {{"kind", "lorentz"}, {"p", s.p()}, {"q", exponent_json(s.q())}, {"dim", s.dimension()}};
            break;
        case SpaceKind::l2_blocks:
            j = {{"kind", "l2blocks"}, {"outer_p", exponent_json(s.p())}, {"blocks", s.block_sizes()}};
            break;
        case SpaceKind::linear_image:
            j = {{"kind", "linear_image"}, {"base", space_to_json(s.base())}, {"matrix", matrix_to_json(s.change_of_basis())}};
            break;
    }
    j["p_convexity"] = s.p_convexity();
    return j;
}

std::string exponent_label(double p) {
    if (std::isinf(p)) return "inf";
    std::ostringstream os;
    os << p;
    auto s = os.str();
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) s += ".0";
    return s;
}

}  // namespace

BasisSystem::BasisSystem(QuasiNorm space, Matrix vectors, std::optional<Matrix> duals,
                         std::vector<std::string> labels)
    : space_(std::move(space)), vectors_(std::move(vectors)), labels_(std::move(labels)) {
    const auto n = static_cast<Eigen::Index>(space_.dimension());
    if (vectors_.rows() != n || vectors_.cols() != n) {
        throw UsageError("basis: vectors must be an n x n matrix with n = space dimension " + std::to_string(n));
    }
    if (!vectors_.allFinite()) throw UsageError("basis: non-finite entry in vectors");
    for (Eigen::Index j = 0; j < n; ++j) {
        if (vectors_.col(j).cwiseAbs().maxCoeff() == 0.0) {
            throw UsageError("basis: vector " + std::to_string(j + 1) + " is zero");
        }
    }
    Eigen::JacobiSVD<Matrix> svd(vectors_);
    const auto& sv = svd.singularValues();
    condition_ = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
    if (duals) {
        duals_ = std::move(*duals);
        if (duals_.rows() != n || duals_.cols() != n) throw UsageError("basis: duals must be n x n");
        if (!duals_.allFinite()) throw UsageError("basis: non-finite entry in duals");
    } else {
        Eigen::FullPivLU<Matrix> lu(vectors_);
        if (!lu.isInvertible()) throw UsageError("basis: vectors are linearly dependent");
        duals_ = lu.inverse();
    }
    residual_ = (duals_ * vectors_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual_ < kBiorthogonalityTol)) {
        std::ostringstream os;
        os << "basis: duals are not biorthogonal (residual " << residual_ << ")";
        throw UsageError(os.str());
    }
    if (condition_ > kConditionWarning) {
        std::ostringstream os;
        os << "ill-conditioned basis: condition number " << condition_;
        warnings_.push_back(os.str());
    }
    if (labels_.empty()) {
        for (Eigen::Index j = 0; j < n; ++j) labels_.push_back("x" + std::to_string(j + 1));
    } else if (static_cast<Eigen::Index>(labels_.size()) != n) {
        throw UsageError("basis: label count must equal dimension");
    }
    diagonal_ = true;
    for (Eigen::Index i = 0; i < n && diagonal_; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if ((i == j && !(vectors_(i, j) > 0.0)) || (i != j && vectors_(i, j) != 0.0)) {
                diagonal_ = false;
                break;
            }
        }
    }
    c_exact_ = true;
    for (Eigen::Index j = 0; j < n; ++j) {
        d_ = std::max(d_, space_.norm(Vector(vectors_.col(j))));
        bool exact = false;
        c_ = std::max(c_, functional_norm(space_, duals_.row(j).transpose(), &exact));
        c_exact_ = c_exact_ && exact;
    }
}

std::string to_string(Property p) {
    switch (p) {
        case Property::unconditional: return "unconditional";
        case Property::democratic: return "democratic";
        case Property::greedy: return "greedy";
        case Property::conditional: return "conditional";
        case Property::non_democratic: return "non-democratic";
    }
    return "unknown";
}

Vector coefficients(const BasisSystem& basis, const Vector& f) {
    if (f.size() != basis.size()) {
        throw UsageError("coefficients: vector length " + std::to_string(f.size()) +
                         " does not match basis size " + std::to_string(basis.size()));
    }
    return basis.duals() * f;
}

double functional_norm(const QuasiNorm& space, const Vector& row, bool* exact) {
    auto set_exact = [&](bool e) {
        if (exact) *exact = e;
    };
    switch (space.kind()) {
        case SpaceKind::lp:
            set_exact(true);
            if (space.p() < 1.0) return row.cwiseAbs().maxCoeff();
            return lp_of(row, holder_conjugate(space.p()));
        case SpaceKind::l2_blocks: {
            set_exact(true);
            Vector parts(static_cast<Eigen::Index>(space.block_sizes().size()));
            Eigen::Index at = 0;
            for (std::size_t b = 0; b < space.block_sizes().size(); ++b) {
                const int len = space.block_sizes()[b];
                parts[static_cast<Eigen::Index>(b)] = row.segment(at, len).norm();
                at += len;
            }
            if (space.p() < 1.0) return parts.maxCoeff();
            return lp_of(parts, holder_conjugate(space.p()));
        }
        case SpaceKind::linear_image:
            return functional_norm(space.base(), space.change_of_basis().transpose() * row, exact);
        case SpaceKind::lorentz:
        case SpaceKind::weak_lp: break;
    }
    // Rearrangement-invariant but no closed dual: probe sign-aligned top-k
    // indicators and powers of |row|.
    set_exact(false);
    const auto n = row.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(row[a]) > std::abs(row[b]); });
    double best = 0.0;
    Vector v = Vector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto i = order[static_cast<std::size_t>(k)];
        v[i] = row[i] >= 0.0 ? 1.0 : -1.0;
        const double nv = space.norm(v);
        if (nv > 0.0) best = std::max(best, std::abs(row.dot(v)) / nv);
    }
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (Eigen::Index i = 0; i < n; ++i) v[i] = (row[i] >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(row[i]), t);
        const double nv = space.norm(v);
        if (nv > 0.0) best = std::max(best, std::abs(row.dot(v)) / nv);
    }
    return best;
}

BasisSystem summing_basis(int dim) {
    Matrix vectors = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i <= j; ++i) vectors(i, j) = 1.0;
    }
    Matrix duals = Matrix::Identity(dim, dim);
    for (int j = 0; j + 1 < dim; ++j) duals(j, j + 1) = -1.0;
    return BasisSystem(QuasiNorm::lp(std::numeric_limits<double>::infinity(), dim), std::move(vectors),
                       std::move(duals));
}

std::vector<int> catalog_block_sizes(int dim) {
    std::vector<int> blocks;
    int used = 0;
    for (int k = 1; used + k <= dim; ++k) {
        blocks.push_back(k);
        used += k;
    }
    if (used < dim) blocks.push_back(dim - used);
    return blocks;
}

namespace {

const std::set<Property> kUnitBasisTags{Property::unconditional, Property::democratic, Property::greedy};

CatalogEntry unit_entry(std::string id, QuasiNorm space) {
    const int n = space.dimension();
    return CatalogEntry{std::move(id), BasisSystem(std::move(space), Matrix::Identity(n, n), Matrix::Identity(n, n)),
                        kUnitBasisTags};
}

CatalogEntry blocks_entry(double outer_p, const std::vector<int>& blocks) {
    std::string id = "l2blocks:" + exponent_label(outer_p) + ":";
    for (std::size_t i = 0; i < blocks.size(); ++i) id += (i ? "+" : "") + std::to_string(blocks[i]);
    auto space = QuasiNorm::l2_blocks(outer_p, blocks);
    const int n = space.dimension();
    std::set<Property> tags{Property::unconditional};
    // a single block, or all blocks of size 1, is symmetric
    const bool uniform = std::all_of(blocks.begin(), blocks.end(), [&](int b) { return b == blocks.front(); });
    const bool symmetric = blocks.size() == 1 || (uniform && blocks.front() == 1) || outer_p == 2.0;
    if (symmetric) {
        tags.insert(Property::democratic);
        tags.insert(Property::greedy);
    } else {
        tags.insert(Property::non_democratic);
    }
    return CatalogEntry{std::move(id), BasisSystem(std::move(space), Matrix::Identity(n, n), Matrix::Identity(n, n)),
                        std::move(tags)};
}

CatalogEntry perturbed_entry(int dim, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x70657274));
    Matrix vectors = Matrix::Identity(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < j; ++i) vectors(i, j) = rng.uniform(-0.25, 0.25);
    }
    return CatalogEntry{"perturbed:" + std::to_string(dim) + ":" + std::to_string(seed),
                        BasisSystem(QuasiNorm::lp(std::numeric_limits<double>::infinity(), dim), std::move(vectors)),
                        {}};
}

}  // namespace

std::vector<CatalogEntry> make_catalog(int dim, std::uint64_t seed) {
    if (dim < 2) throw UsageError("make_catalog: dim must be at least 2");
    std::vector<CatalogEntry> out;
    const auto n = std::to_string(dim);
    out.push_back(unit_entry("lp:0.5:" + n, QuasiNorm::lp(0.5, dim)));
    out.push_back(unit_entry("lp:1.0:" + n, QuasiNorm::lp(1.0, dim)));
    out.push_back(unit_entry("lp:2.0:" + n, QuasiNorm::lp(2.0, dim)));
    out.push_back(CatalogEntry{"summing:" + n, summing_basis(dim), {Property::conditional, Property::democratic}});
    out.push_back(blocks_entry(1.0, catalog_block_sizes(dim)));
    out.push_back(perturbed_entry(dim, seed));
    return out;
}

CatalogEntry resolve_basis(std::string_view id, std::uint64_t seed) {
    const auto parts = split(id, ':');
    const auto& head = parts.front();
    if (head == "lp" && parts.size() == 3) {
        return unit_entry(std::string(id), QuasiNorm::lp(parse_exponent(parts[1], id), parse_positive(parts[2], id)));
    }
    if (head == "weak" && parts.size() == 3) {
        return unit_entry(std::string(id), QuasiNorm::weak_lp(parse_exponent(parts[1], id), parse_positive(parts[2], id)));
    }
    if (head == "lorentz" && parts.size() == 4) {
        return unit_entry(std::string(id), QuasiNorm::lorentz(parse_exponent(parts[1], id), parse_exponent(parts[2], id),
                                                              parse_positive(parts[3], id)));
    }
    if (head == "summing" && parts.size() == 2) {
        const int dim = parse_positive(parts[1], id);
        return CatalogEntry{std::string(id), summing_basis(dim), {Property::conditional, Property::democratic}};
    }
    if (head == "l2blocks" && parts.size() == 3) {
        std::vector<int> blocks;
        for (const auto& b : split(parts[2], '+')) blocks.push_back(parse_positive(b, id));
        auto entry = blocks_entry(parse_exponent(parts[1], id), blocks);
        entry.id = std::string(id);
        return entry;
    }
    if (head == "perturbed" && (parts.size() == 2 || parts.size() == 3)) {
        std::uint64_t s = seed;
        if (parts.size() == 3) {
            try {
                s = std::stoull(parts[2]);
            } catch (const std::exception&) {
                throw UsageError("basis id '" + std::string(id) + "': bad seed");
            }
        }
        auto entry = perturbed_entry(parse_positive(parts[1], id), s);
        entry.id = std::string(id);
        return entry;
    }
    throw UsageError("unknown basis id '" + std::string(id) + "'");
}

QuasiNorm space_from_json_text(std::string_view json_text) {
    try {
        return space_from_json(json::parse(json_text));
    } catch (const json::exception& e) {
        throw UsageError(std::string("space: ") + e.what());
    }
}

BasisSystem basis_from_json_text(std::string_view json_text) {
    try {
        const auto j = json::parse(json_text);
        if (!j.contains("space") || !j.contains("vectors")) throw UsageError("basis file: needs 'space' and 'vectors'");
        auto space = space_from_json(j.at("space"));
        auto vectors = matrix_from_json(j.at("vectors"), "vectors");
        std::optional<Matrix> duals;
        if (j.contains("duals") && !j.at("duals").is_null()) duals = matrix_from_json(j.at("duals"), "duals");
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return BasisSystem(std::move(space), std::move(vectors), std::move(duals), std::move(labels));
    } catch (const json::exception& e) {
        throw UsageError(std::string("basis file: ") + e.what());
    }
}

BasisSystem load_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open basis file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return basis_from_json_text(ss.str());
}

std::string space_to_json_text(const QuasiNorm& space) { return space_to_json(space).dump(); }

}  // namespace greedylab
